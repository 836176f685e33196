#pragma once

#include <iosfwd>
#include <string>

#include "hz4/classify.hpp"

namespace hz4 {

struct SweepOptions {
    RunConfig run;
    int oracle_cutoff = 12;     // oracle cross-check up to this many vertices
    bool per_component = false; // classify components separately
    bool timings = false;       // include millis in JSONL (breaks byte-determinism)
    int jobs = 1;
};

struct SweepStats {
    long long lines = 0;
    long long parse_errors = 0;
    long long skipped = 0;
    long long class1 = 0;
    long long class2 = 0;
    long long oracle_checked = 0;
    long long oracle_mismatches = 0;
    long long failures = 0;  // exceptions while classifying
};

// One graph6 per input line; one JSON object per line out, plus a summary.
void sweep_stream(std::istream& in, std::ostream& out, const SweepOptions& opt,
                  SweepStats* stats_out = nullptr);

// Verification suites (spec scales are the defaults used by `verify`).
bool verify_kempe(long long trials, uint64_t seed, std::ostream& log);
bool verify_lemmas(int per_kind, uint64_t seed, std::ostream& log);
bool verify_theorem(int max_n, int oracle_cutoff, std::ostream& log);
bool verify_val_hz(int max_n, std::ostream& log);
bool verify_configs(int random_count, int max_random_n, uint64_t seed, std::ostream& log);
bool verify_format(std::ostream& log);

Graph petersen();
Graph petersen_minus_vertex();  // P*

}  // namespace hz4
