#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "braidforge/braid.hpp"
#include "braidforge/perm_kernels.hpp"

namespace braidforge {

// A simple (permutation) braid. perm[p] is the starting position of the strand
// that ends at position p; positive letters are applied left to right.
using SimpleBraid = kernels::Perm16;

// Delta^infimum * factors[0] * ... * factors[k-1], left-weighted, with no
// factor equal to Delta or the identity.
struct GarsideForm {
  int strands = 1;
  int infimum = 0;
  std::vector<SimpleBraid> factors;

  int supremum() const { return infimum + static_cast<int>(factors.size()); }
  friend bool operator==(const GarsideForm&, const GarsideForm&) = default;
};

namespace garside {

inline constexpr int kMaxStrands = kernels::kMaxPoints;

SimpleBraid delta(int n);
SimpleBraid generator(int n, int i);
bool is_identity(const SimpleBraid& s, int n);
bool is_delta(const SimpleBraid& s, int n);
// conjugation by Delta: sigma_i -> sigma_{n-i}
SimpleBraid flip(const SimpleBraid& s, int n);
SimpleBraid left_complement(const SimpleBraid& s, int n);
std::uint32_t finishing_set(const SimpleBraid& s, int n);
std::uint32_t starting_set(const SimpleBraid& s, int n);
// A positive reduced word for a simple braid.
std::vector<int> simple_letters(const SimpleBraid& s, int n);

// Brings an arbitrary Delta^inf * product into left normal form.
GarsideForm normalize(int strands, int infimum, std::vector<SimpleBraid> factors);
GarsideForm multiply(const GarsideForm& a, const GarsideForm& b);
GarsideForm cycling(const GarsideForm& x);
GarsideForm decycling(const GarsideForm& x);
GarsideForm conjugate_by_simple(const GarsideForm& x, const SimpleBraid& s);
BraidWord to_word(const GarsideForm& x);
std::string key(const GarsideForm& x);

}  // namespace garside

GarsideForm left_normal_form(const BraidWord& w);

struct ConjugacyBudget {
  int max_strands = 6;
  std::size_t max_summit_size = 100000;
};

// Moves x into its super summit set using iterated cycling and decycling.
GarsideForm to_super_summit(const GarsideForm& x);

// Throws BudgetExceeded when the summit set grows past the cap.
std::vector<GarsideForm> super_summit_set(const GarsideForm& x, const ConjugacyBudget& budget = {});

// Throws BudgetExceeded (never guesses) when limits are hit.
bool are_conjugate(const BraidWord& a, const BraidWord& b, const ConjugacyBudget& budget = {});

}  // namespace braidforge
