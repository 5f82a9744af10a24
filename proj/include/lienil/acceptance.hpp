#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lienil/freealg.hpp"

namespace lienil {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    /// What was compared, and every mismatch.
    std::string detail;
    double seconds = 0;
};

struct SuiteOptions {
    unsigned threads = 1;
    std::uint64_t seed = 20240601;
    /// Number of (polynomial, algebra) pairs in the checker-equivalence corpus.
    int corpus_size = 320;
};

constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const SuiteOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts = {});

/// "[PASS]  3 checker equivalence: ..." without timings, so reports are
/// reproducible.
std::string format_result(const CriterionResult& r);

struct CorpusEntry {
    std::string algebra;
    MultilinearPoly poly;
    std::string origin;
};

/// Seeded (polynomial, algebra) pairs over Grassmann tensor products with
/// bounded slots, degrees 2..5.
std::vector<CorpusEntry> checker_corpus(std::uint64_t seed, int count);

}  // namespace lienil
