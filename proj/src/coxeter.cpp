#include "pseudospace/coxeter.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace pseudospace {

namespace {

void check_letter(int n, int letter) {
  if (letter < 0 || letter > n)
    throw std::out_of_range("generator " + std::to_string(letter) + " outside 0.." + std::to_string(n));
}

// Removes the first occurrence of `letter` that can be commuted to the front.
bool strip_front(std::vector<int>& gens, int letter) {
  for (std::size_t p = 0; p < gens.size(); ++p) {
    if (gens[p] == letter) {
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(p));
      return true;
    }
    if (!commutes(gens[p], letter)) return false;
  }
  return false;
}

bool strip_back(std::vector<int>& gens, int letter) {
  for (std::size_t p = gens.size(); p-- > 0;) {
    if (gens[p] == letter) {
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(p));
      return true;
    }
    if (!commutes(gens[p], letter)) return false;
  }
  return false;
}

std::vector<int> descents(const std::vector<int>& gens, bool front) {
  std::vector<int> out;
  std::vector<int> letters = gens;
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  for (int c : letters) {
    auto copy = gens;
    if (front ? strip_front(copy, c) : strip_back(copy, c)) out.push_back(c);
  }
  return out;
}

}  // namespace

CoxWord make_word(int n, std::vector<int> gens) {
  if (n < 1) throw std::out_of_range("dimension must be >= 1");
  for (int g : gens) check_letter(n, g);
  return CoxWord{n, std::move(gens)};
}

bool commutes(int i, int k) {
  if (i < 0 || k < 0) throw std::out_of_range("negative generator");
  return std::abs(i - k) >= 2;
}

CoxWord normal_form(const CoxWord& w) {
  for (int g : w.gens) check_letter(w.n, g);
  // Free partially commutative cancellation: appending x to a reduced word
  // shortens it exactly when x can be commuted back onto an equal letter.
  std::vector<int> reduced;
  for (int x : w.gens)
    if (!strip_back(reduced, x)) reduced.push_back(x);
  // Lexicographically least ordering: repeatedly pull the smallest letter
  // that commutes to the front.
  std::vector<int> out;
  out.reserve(reduced.size());
  while (!reduced.empty()) {
    auto front = descents(reduced, true);
    strip_front(reduced, front.front());
    out.push_back(front.front());
  }
  return CoxWord{w.n, std::move(out)};
}

bool is_reduced_word(const CoxWord& w) { return normal_form(w).size() == w.size(); }

bool equal(const CoxWord& a, const CoxWord& b) {
  if (a.n != b.n) throw std::invalid_argument("words over different dimensions");
  return normal_form(a) == normal_form(b);
}

CoxWord concat(const CoxWord& a, const CoxWord& b) {
  if (a.n != b.n) throw std::invalid_argument("words over different dimensions");
  CoxWord out = a;
  out.gens.insert(out.gens.end(), b.gens.begin(), b.gens.end());
  return out;
}

CoxWord reversed(const CoxWord& w) {
  CoxWord out = w;
  std::reverse(out.gens.begin(), out.gens.end());
  return out;
}

std::vector<int> left_descents(const CoxWord& w) { return descents(normal_form(w).gens, true); }
std::vector<int> right_descents(const CoxWord& w) { return descents(normal_form(w).gens, false); }

CoxWord min_double_coset_rep(const CoxWord& w, int i, int j) {
  check_letter(w.n, i);
  check_letter(w.n, j);
  std::vector<int> gens = normal_form(w).gens;
  for (bool changed = true; changed;) {
    changed = false;
    for (int c : descents(gens, true))
      if (c != i && strip_front(gens, c)) changed = true;
    for (int c : descents(gens, false))
      if (c != j && strip_back(gens, c)) changed = true;
  }
  return normal_form(CoxWord{w.n, std::move(gens)});
}

std::string format_word(const std::vector<int>& gens) {
  std::string out;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(gens[k]);
  }
  return out;
}

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad generator '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad generator '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace pseudospace
