#pragma once

// Randomized property suites over a tower, plus the generators they share
// with the test programs.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tuhf/automorphism.hpp"

namespace tuhf {

struct RandomTowerOptions {
  std::uint64_t max_ratio = 30;       // bound on s_mult * t_mult per step
  std::uint64_t max_prime = 13;
  std::size_t max_cycle = 3;
  std::uint64_t min_k1 = 2;
  std::uint64_t max_k1 = 4;
  bool allow_preamble = true;
};

// Alternating tower with at least one common infinite prime.
TowerSpec random_alternating_tower(std::mt19937_64& rng, const RandomTowerOptions& options = {});

// Word over the tower's common infinite primes, exponents in [-max, max].
ShiftWord random_word(const TowerSpec& tower, std::mt19937_64& rng, unsigned max_exponent,
                      bool non_identity);

struct PropertyOutcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool skipped = false;
  std::string detail;  // first failure, or why the suite was skipped

  bool passed() const { return skipped || failures == 0; }
  std::string to_string() const;
};

std::vector<PropertyOutcome> run_property_suites(const TowerSpec& tower, std::uint64_t seed,
                                                 std::size_t cases);

}  // namespace tuhf
