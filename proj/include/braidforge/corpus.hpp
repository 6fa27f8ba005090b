#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "braidforge/braid.hpp"
#include "braidforge/recognize.hpp"

namespace braidforge {

struct InstanceSpec {
  TargetMove target = TargetMove::Destabilization;
  int n = 3;
  int core_length = 3;
  int obf_conj_length = 0;
  int obf_rewrites = 0;
  std::uint64_t seed = 0;
};

// The in-form word before obfuscation, plus the conjugator used.
struct HiddenWitness {
  BraidWord core;
  BraidWord conjugator;
  std::vector<std::string> rewrites;  // one entry per applied rewrite
};

struct Instance {
  BraidWord word;
  HiddenWitness witness;
};

// Throws SpecIncompatible when n does not suit the target move or a count
// is negative.
Instance random_obfuscated_instance(const InstanceSpec& spec);

// Braid-relation rewrite, far commutation, free insertion or cancellation at a
// random applicable site. Returns a label of what was done.
std::string random_rewrite(BraidWord& w, std::mt19937_64& rng);

struct BenchRow {
  std::string id;
  TargetMove move = TargetMove::Destabilization;
  int n = 0;
  int core_length = 0;
  Outcome verdict = Outcome::Inconclusive;
  std::size_t states = 0;
  std::size_t cert_len = 0;
  double millis = 0.0;
  bool replay_ok = false;
};

struct Percentiles {
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
  double max = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  Percentiles states;
  Percentiles millis;
  std::size_t found = 0;
  std::size_t not_admitted = 0;
  std::size_t inconclusive = 0;
};

BenchReport run_benchmark_suite(const std::vector<InstanceSpec>& specs, const SearchBudget& b);

// Timing columns are written as 0 when with_timing is false, which makes the
// reports byte-reproducible.
std::string report_csv(const BenchReport& r, bool with_timing = true);
std::string report_json(const BenchReport& r, bool with_timing = true);

// The per-kind suite used by the acceptance run.
std::vector<InstanceSpec> default_suite(TargetMove kind, int count, std::uint64_t seed);

}  // namespace braidforge
