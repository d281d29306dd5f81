#pragma once

#include <string>
#include <vector>

namespace pseudospace {

/// A word in the generators t_0..t_n of the right-angled Coxeter group with
/// t_i^2 = 1 and t_i t_k = t_k t_i for |i - k| >= 2.
struct CoxWord {
  int n = 1;
  std::vector<int> gens;

  std::size_t size() const { return gens.size(); }
  bool empty() const { return gens.empty(); }
  friend bool operator==(const CoxWord&, const CoxWord&) = default;
};

/// Validates the letters; throws std::out_of_range.
CoxWord make_word(int n, std::vector<int> gens);

bool commutes(int i, int k);

/// Shortest word for the same element, lexicographically least among the
/// shortest ones.
CoxWord normal_form(const CoxWord& w);
bool is_reduced_word(const CoxWord& w);
/// Throws std::invalid_argument on a dimension mismatch.
bool equal(const CoxWord& a, const CoxWord& b);

CoxWord concat(const CoxWord& a, const CoxWord& b);
/// The inverse element, since every generator is an involution.
CoxWord reversed(const CoxWord& w);

/// Letters that can start (end) some reduced expression of w.
std::vector<int> left_descents(const CoxWord& w);
std::vector<int> right_descents(const CoxWord& w);

/// Shortest element of <t_k : k != i> w <t_k : k != j>.
CoxWord min_double_coset_rep(const CoxWord& w, int i, int j);

std::string format_word(const std::vector<int>& gens);
/// Parses "0,2,1"; an empty string is the identity.
std::vector<int> parse_word(const std::string& text);

}  // namespace pseudospace
