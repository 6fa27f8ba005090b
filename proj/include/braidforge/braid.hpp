#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braidforge/error.hpp"

namespace braidforge {

// A closed braid as a cyclic word in Artin generators. Letter +i is sigma_i,
// -i is sigma_i^{-1}; every |letter| lies in [1, strands-1].
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

// Throws IndexOutOfRange / InvalidStrandCount on a malformed word.
void validate_word(const BraidWord& w);

// Text format "n=<N>: <i1> <i2> ...".
BraidWord parse_word(std::string_view text);
std::string format_word(const BraidWord& w);

BraidWord rotate_word(const BraidWord& w, std::size_t offset);
BraidWord inverse_word(const BraidWord& w);
BraidWord concat(const BraidWord& a, const BraidWord& b);
int exponent_sum(const BraidWord& w);

// Free reduction including the seam between the last and first letter.
BraidWord cyclic_reduce(const BraidWord& w);

// True when b is a cyclic rotation of a.
bool cyclically_equal(const BraidWord& a, const BraidWord& b);

// Cyclic free reduction that also cancels a letter against its inverse when
// every letter between them (cyclically) commutes with it.
BraidWord commuting_reduce(const BraidWord& w);

// Rotation with the lexicographically least letter sequence.
BraidWord least_rotation(const BraidWord& w);

// Cyclic words reachable by swapping adjacent letters whose indices differ by
// at least two, each as its least rotation. Stops after `limit` words.
std::vector<BraidWord> far_commutation_class(const BraidWord& w, std::size_t limit = 512);

struct ClosureComponents {
  // permutation[i] = final position of the strand that starts at position i.
  std::vector<int> permutation;
  int count = 0;
  // assignment[i] = component of the strand starting at position i. Components
  // are numbered by their lowest starting position.
  std::vector<int> assignment;
};

ClosureComponents closure_components(const BraidWord& w);

// Symmetric matrix over components. Off-diagonal entries are linking numbers
// (half the signed count of inter-component crossings), diagonal entries are
// the signed self-crossing counts.
class LinkingMatrix {
 public:
  LinkingMatrix() = default;
  explicit LinkingMatrix(int components)
      : n_(components), counts_(static_cast<std::size_t>(components * components), 0) {}

  int size() const { return n_; }
  void add_crossing(int a, int b, int sign);
  int signed_count(int a, int b) const { return counts_[static_cast<std::size_t>(a * n_ + b)]; }
  double entry(int a, int b) const;

  friend bool operator==(const LinkingMatrix&, const LinkingMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<int> counts_;
};

std::string to_string(const LinkingMatrix& m);

LinkingMatrix linking_matrix_of_word(const BraidWord& w);

// --- syntactic move forms -------------------------------------------------

// W with beta = W sigma_{n-1}^{+-1} for some rotation. W lives on n strands
// (use destabilize_word to drop the top strand).
struct DestabilizationForm {
  std::size_t rotation = 0;
  BraidWord reduced;  // W, still on n strands
  int sign = 1;
};

std::optional<DestabilizationForm> detect_destabilization_form(const BraidWord& w);

struct DoubleDestabilizationForm {
  std::size_t rotation = 0;
  BraidWord prefix;  // W over sigma_1..sigma_{n-3}
  int epsilon = 1;
};

// Throws StrandCountTooSmall for n < 4.
std::optional<DoubleDestabilizationForm> detect_double_destabilization_form(const BraidWord& w);

struct ExchangeForm {
  std::size_t rotation = 0;
  std::size_t split = 0;  // W = rotated[0, split), U = rotated[split, end)
  int s = 0;
  int t = 0;
  std::vector<int> w_block;
  std::vector<int> u_block;
  bool thin = false;

  friend bool operator==(const ExchangeForm&, const ExchangeForm&) = default;
};

std::vector<ExchangeForm> enumerate_exchange_forms(const BraidWord& w);

struct FlypeForm {
  std::size_t rotation = 0;
  std::vector<int> w1_block;
  std::vector<int> w2_block;
  int p = 0;
  int delta = 1;

  friend bool operator==(const FlypeForm&, const FlypeForm&) = default;
};

std::vector<FlypeForm> enumerate_elementary_flype_forms(const BraidWord& w);

// Full twist on strands lo..hi as the square of the positive half twist
// (sigma_lo ... sigma_{hi-1})(sigma_lo ... sigma_{hi-2}) ... (sigma_lo).
std::vector<int> full_twist_letters(int lo, int hi, int sign);

BraidWord apply_exchange_move(const BraidWord& w, const ExchangeForm& f, int twist_sign);
BraidWord apply_elementary_flype(const BraidWord& w, const FlypeForm& f);
BraidWord destabilize_word(const BraidWord& w);

}  // namespace braidforge
