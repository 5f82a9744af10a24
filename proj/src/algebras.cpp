#include "lienil/algebras.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lienil/errors.hpp"
#include "lienil/linalg.hpp"

namespace lienil {

namespace {

std::uint64_t next_algebra_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter++;
}

SparseVec sparse_product(const FiniteAlgebra& alg, const SparseVec& a, const SparseVec& b) {
    std::vector<SparseVec::Entry> acc;
    for (const auto& [i, x] : a.entries()) {
        for (const auto& [j, y] : b.entries()) {
            Rational xy = x * y;
            for (const auto& [k, z] : alg.mul_basis(i, j).entries()) acc.emplace_back(k, xy * z);
        }
    }
    return SparseVec::from_pairs(std::move(acc));
}

const std::string kSlotLetters = "efghijklmnopqrstuvwxyzabcd";

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> labels, std::size_t unit, std::vector<SparseVec> table,
                             std::size_t max_dim)
    : id_(next_algebra_id()), labels_(std::move(labels)), unit_(unit), table_(std::move(table)) {
    const std::size_t d = labels_.size();
    if (d == 0) throw DomainError("algebra must have a nonempty basis");
    if (d > max_dim)
        throw SizeGuard("algebra dimension " + std::to_string(d) + " exceeds the cap " + std::to_string(max_dim));
    if (table_.size() != d * d) throw DomainError("multiplication table has the wrong size");
    if (unit_ >= d) throw DomainError("unit index out of range");
    for (std::size_t i = 0; i < d; ++i) {
        if (!label_index_.emplace(labels_[i], i).second) throw DomainError("duplicate basis label: " + labels_[i]);
    }
    for (const auto& v : table_)
        if (v.extent() > d) throw DomainError("structure constant refers to a basis index out of range");
    for (std::size_t i = 0; i < d; ++i) {
        if (mul_basis(unit_, i) != SparseVec::unit(static_cast<Col>(i)) ||
            mul_basis(i, unit_) != SparseVec::unit(static_cast<Col>(i)))
            throw DomainError("unit does not act as a two-sided identity on " + labels_[i]);
    }
    monomial_ = true;
    mono_target_.assign(d * d, -1);
    mono_coeff_.assign(d * d, 0);
    for (std::size_t t = 0; t < d * d && monomial_; ++t) {
        const auto& v = table_[t];
        if (v.empty()) continue;
        if (v.size() != 1 || !v.entries()[0].second.is_integer() || !v.entries()[0].second.is_small()) {
            monomial_ = false;
            break;
        }
        mono_target_[t] = static_cast<std::int32_t>(v.entries()[0].first);
        mono_coeff_[t] = v.entries()[0].second.to_int64();
    }
    if (!monomial_) {
        mono_target_.clear();
        mono_coeff_.clear();
    }
    if (!check_associative()) throw DomainError("multiplication table is not associative");
}

void FiniteAlgebra::check_same(const AlgElem& a) const {
    if (a.algebra_id != id_) throw DimensionMismatch("element belongs to a different algebra");
}

AlgElem FiniteAlgebra::basis(std::size_t i) const {
    if (i >= dim()) throw DomainError("basis index out of range");
    return AlgElem{id_, SparseVec::unit(static_cast<Col>(i))};
}

AlgElem FiniteAlgebra::basis(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) throw DomainError("unknown basis label: " + label);
    return basis(it->second);
}

AlgElem FiniteAlgebra::element(SparseVec coords) const {
    if (coords.extent() > dim()) throw DimensionMismatch("coordinates exceed the algebra dimension");
    return AlgElem{id_, std::move(coords)};
}

AlgElem FiniteAlgebra::mul(const AlgElem& a, const AlgElem& b) const {
    check_same(a);
    check_same(b);
    return AlgElem{id_, sparse_product(*this, a.coords, b.coords)};
}

AlgElem FiniteAlgebra::add(const AlgElem& a, const AlgElem& b) const {
    check_same(a);
    check_same(b);
    return AlgElem{id_, a.coords + b.coords};
}

AlgElem FiniteAlgebra::scale(const AlgElem& a, const Rational& s) const {
    check_same(a);
    AlgElem out = a;
    out.coords *= s;
    return out;
}

AlgElem FiniteAlgebra::commutator(const AlgElem& a, const AlgElem& b) const {
    check_same(a);
    check_same(b);
    return AlgElem{id_, sparse_product(*this, a.coords, b.coords) - sparse_product(*this, b.coords, a.coords)};
}

std::string FiniteAlgebra::str(const AlgElem& a) const {
    check_same(a);
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : a.coords.entries()) {
        Rational mag = c;
        if (c.sign() < 0) {
            out += first ? "-" : " - ";
            mag = -c;
        } else if (!first) {
            out += " + ";
        }
        first = false;
        if (i == unit_) {
            out += mag.str();
            continue;
        }
        if (mag != Rational(1)) out += mag.str() + "*";
        out += labels_[i];
    }
    return out;
}

bool FiniteAlgebra::check_associative(std::size_t exhaustive_limit, std::size_t samples) const {
    const std::size_t d = dim();
    auto triple_ok = [&](std::size_t i, std::size_t j, std::size_t k) {
        SparseVec ij = mul_basis(i, j);
        SparseVec left = sparse_product(*this, ij, SparseVec::unit(static_cast<Col>(k)));
        SparseVec right = sparse_product(*this, SparseVec::unit(static_cast<Col>(i)), mul_basis(j, k));
        return left == right;
    };
    if (d <= exhaustive_limit) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    if (!triple_ok(i, j, k)) return false;
        return true;
    }
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    for (std::size_t s = 0; s < samples; ++s)
        if (!triple_ok(pick(rng), pick(rng), pick(rng))) return false;
    return true;
}

void FiniteAlgebra::set_grassmann_slots(std::vector<int> dims, std::vector<std::vector<GMonomial>> supports) {
    if (supports.size() != dim()) throw InternalError("slot supports do not match the basis");
    slot_dims_ = std::move(dims);
    supports_ = std::move(supports);
    key_index_.clear();
    for (std::size_t i = 0; i < supports_.size(); ++i) key_index_.emplace(supports_[i], i);
}

std::size_t FiniteAlgebra::index_of(const std::vector<GMonomial>& key) const {
    auto it = key_index_.find(key);
    if (it == key_index_.end()) throw DomainError("no basis element with the given slot monomials");
    return it->second;
}

TensorElem FiniteAlgebra::to_tensor(const AlgElem& a) const {
    check_same(a);
    if (!has_grassmann_slots()) throw DomainError("algebra is not built from Grassmann slots");
    TensorElem t(slot_dims_);
    for (const auto& [i, c] : a.coords.entries()) t.add_term(supports_[i], c);
    return t;
}

AlgElem FiniteAlgebra::from_tensor(const TensorElem& t) const {
    if (!has_grassmann_slots()) throw DomainError("algebra is not built from Grassmann slots");
    std::vector<SparseVec::Entry> e;
    for (const auto& [k, c] : t.terms()) e.emplace_back(static_cast<Col>(index_of(k)), c);
    return AlgElem{id_, SparseVec::from_pairs(std::move(e))};
}

AlgebraPtr make_grassmann(int r, std::size_t max_dim) {
    if (r < 2 || r > 24) throw DomainError("make_grassmann needs 2 <= r <= 24");
    const std::size_t d = std::size_t{1} << r;
    if (d > max_dim)
        throw SizeGuard("E_" + std::to_string(r) + " has dimension " + std::to_string(d) + " above the cap " +
                        std::to_string(max_dim));
    std::vector<GMonomial> monos(d);
    for (std::size_t i = 0; i < d; ++i) monos[i] = i;
    std::sort(monos.begin(), monos.end(), MonomialLess{});
    std::vector<std::size_t> index(d);
    for (std::size_t i = 0; i < d; ++i) index[monos[i]] = i;
    std::vector<std::string> labels;
    for (auto m : monos) labels.push_back(monomial_str(m));
    std::vector<SparseVec> table(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            int sg = gmonomial_sign(monos[i], monos[j]);
            if (sg) table[i * d + j] = SparseVec::unit(static_cast<Col>(index[monos[i] | monos[j]]), Rational(sg));
        }
    }
    auto alg = std::make_shared<FiniteAlgebra>(std::move(labels), 0, std::move(table), max_dim);
    std::vector<std::vector<GMonomial>> supports;
    for (auto m : monos) supports.push_back({m});
    alg->set_grassmann_slots({r}, std::move(supports));
    return alg;
}

AlgebraPtr make_nk(int k) {
    if (k < 3) throw DomainError("make_nk needs k >= 3");
    if (k > 64) throw SizeGuard("make_nk: k too large");
    const auto kk = static_cast<std::size_t>(k);
    using Matrix = std::vector<Rational>;  // row-major k x k
    auto identity = [&] {
        Matrix m(kk * kk);
        for (std::size_t i = 0; i < kk; ++i) m[i * kk + i] = Rational(1);
        return m;
    };
    auto matmul = [&](const Matrix& a, const Matrix& b) {
        Matrix c(kk * kk);
        for (std::size_t i = 0; i < kk; ++i)
            for (std::size_t l = 0; l < kk; ++l) {
                if (a[i * kk + l].is_zero()) continue;
                for (std::size_t j = 0; j < kk; ++j) c[i * kk + j] += a[i * kk + l] * b[l * kk + j];
            }
        return c;
    };
    Matrix jmat(kk * kk);
    for (std::size_t i = 0; i + 1 < kk; ++i) jmat[i * kk + i + 1] = Rational(1);
    std::vector<Matrix> basis{identity()};
    std::vector<std::string> labels{"I"};
    Matrix power = jmat;
    for (int t = 1; t <= k - 2; ++t) {
        basis.push_back(power);
        labels.push_back(t == 1 ? "J" : "J^" + std::to_string(t));
        power = matmul(power, jmat);
    }
    for (std::size_t j = 1; j < kk; ++j) {
        Matrix e(kk * kk);
        e[j] = Rational(1);
        basis.push_back(e);
        labels.push_back("e1" + std::to_string(j + 1));
    }
    const std::size_t d = basis.size();
    const Col limit = static_cast<Col>(kk * kk);
    auto flatten = [&](const Matrix& m, std::size_t tag) {
        std::vector<SparseVec::Entry> e;
        for (std::size_t t = 0; t < kk * kk; ++t)
            if (!m[t].is_zero()) e.emplace_back(static_cast<Col>(t), m[t]);
        if (tag != d) e.emplace_back(limit + static_cast<Col>(tag), Rational(1));
        return SparseVec::from_pairs(std::move(e));
    };
    Echelon ech(limit);
    for (std::size_t i = 0; i < d; ++i) {
        if (!ech.add(flatten(basis[i], i))) throw InternalError("N_k basis is linearly dependent");
    }
    std::vector<SparseVec> table(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            SparseVec r = ech.reduce(flatten(matmul(basis[i], basis[j]), d));
            std::vector<SparseVec::Entry> coords;
            for (const auto& [c, v] : r.entries()) {
                if (c < limit) throw DomainError("N_k: product of basis elements leaves the span");
                coords.emplace_back(c - limit, -v);
            }
            table[i * d + j] = SparseVec::from_pairs(std::move(coords));
        }
    }
    return std::make_shared<FiniteAlgebra>(std::move(labels), 0, std::move(table));
}

AlgebraPtr tensor(const std::vector<AlgebraPtr>& factors, std::size_t max_dim) {
    if (factors.empty()) throw DomainError("tensor needs at least one factor");
    if (factors.size() == 1) return factors.front();
    std::size_t d = 1;
    for (const auto& f : factors) {
        d *= f->dim();
        if (d > max_dim)
            throw SizeGuard("tensor product dimension exceeds the cap " + std::to_string(max_dim));
    }
    const std::size_t s = factors.size();
    bool grass = std::all_of(factors.begin(), factors.end(), [](const AlgebraPtr& f) { return f->has_grassmann_slots(); });
    // digits of a basis index, first factor most significant
    auto digits = [&](std::size_t idx) {
        std::vector<std::size_t> out(s);
        for (std::size_t t = s; t-- > 0;) {
            out[t] = idx % factors[t]->dim();
            idx /= factors[t]->dim();
        }
        return out;
    };
    std::vector<std::string> labels;
    std::vector<std::vector<GMonomial>> supports;
    std::vector<int> slot_dims;
    if (grass)
        for (const auto& f : factors) slot_dims.insert(slot_dims.end(), f->slot_dims().begin(), f->slot_dims().end());
    for (std::size_t idx = 0; idx < d; ++idx) {
        auto dg = digits(idx);
        if (grass) {
            std::vector<GMonomial> key;
            for (std::size_t t = 0; t < s; ++t) {
                const auto& sup = factors[t]->slot_support(dg[t]);
                key.insert(key.end(), sup.begin(), sup.end());
            }
            std::string label;
            for (std::size_t t = 0; t < key.size(); ++t) {
                if (t) label += " ⊗ ";
                label += monomial_str(key[t], kSlotLetters[t % kSlotLetters.size()]);
            }
            labels.push_back(label);
            supports.push_back(std::move(key));
        } else {
            std::string label;
            for (std::size_t t = 0; t < s; ++t) {
                if (t) label += " ⊗ ";
                label += factors[t]->labels()[dg[t]];
            }
            labels.push_back(label);
        }
    }
    std::size_t unit = 0;
    for (std::size_t t = 0; t < s; ++t) unit = unit * factors[t]->dim() + factors[t]->unit_index();
    std::vector<SparseVec> table(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        auto di = digits(i);
        for (std::size_t j = 0; j < d; ++j) {
            auto dj = digits(j);
            std::vector<std::pair<std::size_t, Rational>> acc{{0, Rational(1)}};
            for (std::size_t t = 0; t < s && !acc.empty(); ++t) {
                const SparseVec& p = factors[t]->mul_basis(di[t], dj[t]);
                std::vector<std::pair<std::size_t, Rational>> next;
                for (const auto& [base, c] : acc)
                    for (const auto& [k, v] : p.entries()) next.emplace_back(base * factors[t]->dim() + k, c * v);
                acc = std::move(next);
            }
            std::vector<SparseVec::Entry> e;
            for (auto& [k, c] : acc) e.emplace_back(static_cast<Col>(k), std::move(c));
            table[i * d + j] = SparseVec::from_pairs(std::move(e));
        }
    }
    auto alg = std::make_shared<FiniteAlgebra>(std::move(labels), unit, std::move(table), max_dim);
    if (grass) alg->set_grassmann_slots(std::move(slot_dims), std::move(supports));
    return alg;
}

AlgebraPtr parse_algebra_json(const std::string& text, std::size_t max_dim) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("algebra JSON: ") + e.what());
    }
    try {
        std::vector<std::string> labels = j.at("basis").get<std::vector<std::string>>();
        auto unit = j.at("unit").get<std::size_t>();
        const std::size_t d = labels.size();
        if (d > max_dim) throw SizeGuard("algebra dimension exceeds the cap " + std::to_string(max_dim));
        std::vector<std::vector<SparseVec::Entry>> raw(d * d);
        for (const auto& row : j.at("table")) {
            auto i = row.at(0).get<std::size_t>();
            auto k = row.at(1).get<std::size_t>();
            if (i >= d || k >= d) throw ParseError("algebra JSON: table index out of range");
            for (const auto& term : row.at(2)) {
                auto idx = term.at(0).get<std::size_t>();
                if (idx >= d) throw ParseError("algebra JSON: table index out of range");
                Rational c = term.at(1).is_string() ? Rational::parse(term.at(1).get<std::string>())
                                                    : Rational(term.at(1).get<std::int64_t>());
                raw[i * d + k].emplace_back(static_cast<Col>(idx), c);
            }
        }
        std::vector<SparseVec> table;
        table.reserve(d * d);
        for (auto& r : raw) table.push_back(SparseVec::from_pairs(std::move(r)));
        return std::make_shared<FiniteAlgebra>(std::move(labels), unit, std::move(table), max_dim);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("algebra JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("algebra JSON: ") + e.what());
    }
}

AlgebraPtr load_algebra_json(const std::string& path, std::size_t max_dim) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open algebra file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra_json(ss.str(), max_dim);
}

std::string algebra_to_json(const FiniteAlgebra& a) {
    nlohmann::json j;
    j["basis"] = a.labels();
    j["unit"] = a.unit_index();
    nlohmann::json table = nlohmann::json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t k = 0; k < a.dim(); ++k) {
            const auto& v = a.mul_basis(i, k);
            if (v.empty()) continue;
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [idx, c] : v.entries()) terms.push_back({idx, c.str()});
            table.push_back({i, k, terms});
        }
    }
    j["table"] = table;
    return j.dump();
}

namespace {

// Evaluates f word by word; consecutive words in lexicographic order share
// prefixes, so partial products are cached along the current word.
template <class Elem, class Mul, class Acc>
void evaluate_words(const NcPoly& f, const std::vector<Elem>& args, const Elem& one, Mul mul, Acc accumulate) {
    std::vector<Elem> prefix{one};
    const Word* prev = nullptr;
    for (const auto& [w, c] : f.terms()) {
        std::size_t common = 0;
        if (prev) {
            while (common < w.size() && common < prev->size() && (*prev)[common] == w[common]) ++common;
        }
        prefix.resize(common + 1);
        for (std::size_t i = common; i < w.size(); ++i) {
            if (w[i] < 1 || w[i] > args.size())
                throw DomainError("polynomial uses x" + std::to_string(w[i]) + " but only " +
                                  std::to_string(args.size()) + " arguments were given");
            prefix.push_back(mul(prefix.back(), args[w[i] - 1u]));
        }
        accumulate(prefix.back(), c);
        prev = &w;
    }
}

}  // namespace

AlgElem evaluate(const NcPoly& f, const std::vector<AlgElem>& args, const FiniteAlgebra& a) {
    for (const auto& x : args)
        if (x.algebra_id != a.id()) throw DimensionMismatch("argument from a different algebra");
    std::vector<SparseVec::Entry> acc;
    evaluate_words(
        f, args, a.one(), [&](const AlgElem& x, const AlgElem& y) { return a.mul(x, y); },
        [&](const AlgElem& v, const Rational& c) {
            for (const auto& [k, x] : v.coords.entries()) acc.emplace_back(k, c * x);
        });
    return a.element(SparseVec::from_pairs(std::move(acc)));
}

TensorElem evaluate(const NcPoly& f, const std::vector<TensorElem>& args) {
    if (args.empty()) {
        if (f.max_var() > 0) throw DomainError("evaluation needs arguments");
        TensorElem out;
        for (const auto& [w, c] : f.terms()) out.add_term({}, c);
        return out;
    }
    const auto& dims = args.front().dims();
    for (const auto& x : args)
        if (x.dims() != dims) throw DimensionMismatch("tensor arguments of different shape");
    TensorElem out(dims);
    evaluate_words(
        f, args, TensorElem::one(dims), [](const TensorElem& x, const TensorElem& y) { return tmul(x, y); },
        [&](const TensorElem& v, const Rational& c) {
            TensorElem t = v;
            t *= c;
            out += t;
        });
    return out;
}

}  // namespace lienil
