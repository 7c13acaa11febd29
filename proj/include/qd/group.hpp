#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qd/errors.hpp"

namespace qd {

/// One conjugacy class. `members` ascending, `representative == members[0]`.
struct ConjugacyClass {
  int representative = 0;
  std::vector<int> members;
};

/// A subgroup given by its element set inside a parent group.
/// `elements` ascending parent indices, identity (0) always first;
/// `position[g]` is the local index of parent element g, or -1.
struct Subgroup {
  std::vector<int> elements;
  std::vector<int> position;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const {
    return g >= 0 && g < static_cast<int>(position.size()) && position[g] >= 0;
  }
  int local(int g) const { return position[g]; }
};

/// Finite group on dense element indices 0..n-1 with the identity at index 0.
/// The Cayley table is validated on construction; inverses, conjugacy classes
/// and a conjugating transversal are precomputed.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Build from a row-major multiplication table t[a*n+b] = a*b.
  static FiniteGroup from_cayley(std::vector<int> table, std::vector<std::string> labels = {},
                                 std::string name = "group") {
    FiniteGroup g;
    const std::size_t sz = table.size();
    const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(sz))));
    if (n < 1 || static_cast<std::size_t>(n) * n != sz)
      throw ArgumentError("cayley table is not square");
    g.n_ = n;
    g.cayley_ = std::move(table);
    g.name_ = std::move(name);
    g.labels_ = std::move(labels);
    if (g.labels_.empty()) {
      g.labels_.resize(n);
      for (int i = 0; i < n; ++i) g.labels_[i] = std::to_string(i);
    }
    if (static_cast<int>(g.labels_.size()) != n)
      throw ArgumentError("label count does not match group order");
    g.validate_and_finish();
    return g;
  }

  int order() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int g) const { return labels_.at(static_cast<std::size_t>(check(g))); }

  int multiply(int a, int b) const { return cayley_[static_cast<std::size_t>(check(a)) * n_ + check(b)]; }
  int inverse(int a) const { return inverse_[check(a)]; }
  /// g h g^-1
  int conjugate(int g, int h) const { return multiply(multiply(g, h), inverse(g)); }

  const std::vector<ConjugacyClass>& conjugacy_classes() const { return classes_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int class_of(int g) const { return class_of_[check(g)]; }
  /// Some k with k * rep * k^-1 == g, where rep is g's class representative.
  int conjugator(int g) const { return conjugator_[check(g)]; }

  /// Centralizer subgroup {k : k a = a k}. The model literature calls this set
  /// the normalizer of a, and the API keeps that name.
  Subgroup normalizer(int a) const {
    check(a);
    Subgroup s;
    s.position.assign(n_, -1);
    for (int k = 0; k < n_; ++k) {
      if (multiply(k, a) == multiply(a, k)) {
        s.position[k] = static_cast<int>(s.elements.size());
        s.elements.push_back(k);
      }
    }
    return s;
  }

  /// Validate that `elements` (parent indices) is closed and wrap as Subgroup.
  Subgroup subgroup(std::vector<int> elements) const {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements[0] != 0)
      throw ArgumentError("subgroup must contain the identity");
    Subgroup s;
    s.position.assign(n_, -1);
    for (std::size_t i = 0; i < elements.size(); ++i) {
      check(elements[i]);
      s.position[elements[i]] = static_cast<int>(i);
    }
    for (int a : elements)
      for (int b : elements)
        if (s.position[multiply(a, b)] < 0)
          throw ArgumentError("element set is not closed under multiplication");
    s.elements = std::move(elements);
    return s;
  }

  const std::vector<int>& cayley() const { return cayley_; }

 private:
  int check(int g) const {
    if (g < 0 || g >= n_) throw ArgumentError("element index out of range");
    return g;
  }

  void validate_and_finish() {
    for (int b = 0; b < n_; ++b)
      if (cayley_[b] != b || cayley_[static_cast<std::size_t>(b) * n_] != b)
        throw ArgumentError("index 0 is not a two-sided identity");
    std::vector<bool> seen(n_);
    for (int a = 0; a < n_; ++a) {
      std::fill(seen.begin(), seen.end(), false);
      for (int b = 0; b < n_; ++b) {
        const int v = cayley_[static_cast<std::size_t>(a) * n_ + b];
        if (v < 0 || v >= n_ || seen[v]) throw ArgumentError("cayley row is not a permutation");
        seen[v] = true;
      }
    }
    for (int b = 0; b < n_; ++b) {
      std::fill(seen.begin(), seen.end(), false);
      for (int a = 0; a < n_; ++a) {
        const int v = cayley_[static_cast<std::size_t>(a) * n_ + b];
        if (seen[v]) throw ArgumentError("cayley column is not a permutation");
        seen[v] = true;
      }
    }
    inverse_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        if (cayley_[static_cast<std::size_t>(a) * n_ + b] == 0) {
          if (cayley_[static_cast<std::size_t>(b) * n_ + a] != 0)
            throw ArgumentError("one-sided inverse found; not a group");
          inverse_[a] = b;
          break;
        }
      }
      if (inverse_[a] < 0) throw ArgumentError("element has no inverse");
    }
    // Associativity: exhaustive for small orders, seeded random triples beyond.
    if (n_ <= 256) {
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
          const int ab = multiply(a, b);
          for (int c = 0; c < n_; ++c)
            if (multiply(ab, c) != multiply(a, multiply(b, c)))
              throw ArgumentError("multiplication table is not associative");
        }
    } else {
      std::mt19937 rng(12345);
      std::uniform_int_distribution<int> pick(0, n_ - 1);
      for (int t = 0; t < 10 * n_; ++t) {
        const int a = pick(rng), b = pick(rng), c = pick(rng);
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
          throw ArgumentError("multiplication table is not associative");
      }
    }
    compute_classes();
  }

  void compute_classes() {
    class_of_.assign(n_, -1);
    conjugator_.assign(n_, -1);
    classes_.clear();
    // Scanning unassigned elements in index order yields the canonical class
    // order: identity class first, then by smallest member.
    for (int g = 0; g < n_; ++g) {
      if (class_of_[g] >= 0) continue;
      ConjugacyClass cls;
      cls.representative = g;
      const int ci = static_cast<int>(classes_.size());
      for (int k = 0; k < n_; ++k) {
        const int h = conjugate(k, g);
        if (class_of_[h] < 0) {
          class_of_[h] = ci;
          conjugator_[h] = k;
          cls.members.push_back(h);
        }
      }
      std::sort(cls.members.begin(), cls.members.end());
      classes_.push_back(std::move(cls));
    }
  }

  int n_ = 0;
  std::vector<int> cayley_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  std::string name_;
  std::vector<ConjugacyClass> classes_;
  std::vector<int> class_of_;
  std::vector<int> conjugator_;
};

/// Re-index a subgroup as a standalone group; element i corresponds to
/// parent element sub.elements[i]. Labels follow the parent.
inline FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& sub,
                                     std::string name = "subgroup") {
  const int m = sub.order();
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int p = g.multiply(sub.elements[i], sub.elements[j]);
      if (!sub.contains(p)) throw ArgumentError("subgroup is not closed");
      table[static_cast<std::size_t>(i) * m + j] = sub.local(p);
    }
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = g.label(sub.elements[i]);
  return FiniteGroup::from_cayley(std::move(table), std::move(labels), std::move(name));
}

namespace detail {

inline std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  // (a b)(x) = a(b(x)): b acts first.
  std::vector<int> r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
  return r;
}

/// Unique integer code of a permutation; valid for degree <= 15.
inline std::uint64_t perm_code(const std::vector<int>& p) {
  std::uint64_t c = 0;
  for (int v : p) c = c * 16 + static_cast<std::uint64_t>(v);
  return c;
}

inline std::string perm_label(const std::vector<int>& p) {
  if (p.size() <= 10) {
    std::string s;
    for (int v : p) s += static_cast<char>('0' + v);
    return s;
  }
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

inline FiniteGroup group_from_perm_list(const std::vector<std::vector<int>>& elems,
                                        std::vector<std::string> labels, std::string name) {
  const int n = static_cast<int>(elems.size());
  if (n == 0) throw ArgumentError("empty permutation list");
  if (elems[0].size() > 15) throw CapacityError("permutation degree above 15 is not supported");
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(static_cast<std::size_t>(n) * 2);
  for (int i = 0; i < n; ++i) index.emplace(perm_code(elems[i]), i);
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  const std::size_t deg = elems[0].size();
  std::vector<int> scratch(deg);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& pa = elems[a];
      const auto& pb = elems[b];
      std::uint64_t c = 0;
      for (std::size_t x = 0; x < deg; ++x) c = c * 16 + static_cast<std::uint64_t>(pa[pb[x]]);
      const auto it = index.find(c);
      if (it == index.end()) throw ArgumentError("permutation set is not closed");
      table[static_cast<std::size_t>(a) * n + b] = it->second;
    }
  return FiniteGroup::from_cayley(std::move(table), std::move(labels), std::move(name));
}

}  // namespace detail

/// Cyclic group of order n under addition mod n.
inline FiniteGroup cyclic_group(int n) {
  if (n < 1) throw ArgumentError("cyclic group order must be positive");
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return FiniteGroup::from_cayley(std::move(table), {}, "z" + std::to_string(n));
}

/// Dihedral group of order 2n: indices 0..n-1 are rotations r^k,
/// n..2n-1 are reflections s r^k, with s r s = r^-1.
inline FiniteGroup dihedral_group(int n) {
  if (n < 1) throw ArgumentError("dihedral parameter must be positive");
  const int m = 2 * n;
  auto idx = [n](int eps, int k) { return eps * n + ((k % n + n) % n); };
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int e1 = 0; e1 < 2; ++e1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int e2 = 0; e2 < 2; ++e2)
        for (int k2 = 0; k2 < n; ++k2) {
          const int k = e2 ? (k2 - k1) : (k1 + k2);
          table[static_cast<std::size_t>(idx(e1, k1)) * m + idx(e2, k2)] = idx(e1 ^ e2, k);
        }
  std::vector<std::string> labels(m);
  for (int k = 0; k < n; ++k) {
    labels[k] = k == 0 ? "e" : (k == 1 ? "r" : "r" + std::to_string(k));
    labels[n + k] = k == 0 ? "s" : (k == 1 ? "sr" : "sr" + std::to_string(k));
  }
  return FiniteGroup::from_cayley(std::move(table), std::move(labels), "d" + std::to_string(n));
}

/// Symmetric group on n points (n <= 7), elements in lexicographic one-line
/// order so the identity comes first.
inline FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 7) throw ArgumentError("symmetric group supported for 1 <= n <= 7");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> elems;
  do {
    elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) labels[i] = detail::perm_label(elems[i]);
  return detail::group_from_perm_list(elems, std::move(labels), "s" + std::to_string(n));
}

/// The six-element nonabelian group in the presentation-fixed element order
/// (e, y, y^2, x, xy, xy^2) with y^3 = e, x^2 = e and x y = y^2 x.
inline FiniteGroup s3_presented() {
  const std::vector<std::vector<int>> elems = {
      {0, 1, 2},  // e
      {1, 2, 0},  // y
      {2, 0, 1},  // y^2
      {1, 0, 2},  // x
      {0, 2, 1},  // xy
      {2, 1, 0},  // xy^2
  };
  return detail::group_from_perm_list(elems, {"e", "y", "y2", "x", "xy", "xy2"}, "s3");
}

/// Closure of a permutation generating set under composition.
/// Canonical element order is breadth-first discovery order, identity first;
/// exceeding max_order raises CapacityError.
inline FiniteGroup group_from_generators(const std::vector<std::vector<int>>& generators,
                                         int max_order = 5040, std::string name = "generated") {
  if (generators.empty()) throw ArgumentError("no generators given");
  const int deg = static_cast<int>(generators[0].size());
  if (deg < 1) throw ArgumentError("generators must act on at least one point");
  if (deg > 15) throw CapacityError("permutation degree above 15 is not supported");
  for (const auto& p : generators) {
    if (static_cast<int>(p.size()) != deg)
      throw ArgumentError("generators act on different numbers of points");
    std::vector<bool> seen(deg, false);
    for (int v : p) {
      if (v < 0 || v >= deg || seen[v]) throw ArgumentError("generator is not a permutation");
      seen[v] = true;
    }
  }
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::unordered_map<std::uint64_t, int> index{{detail::perm_code(id), 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : generators) {
      auto next = detail::compose_perm(elems[head], gen);
      auto key = detail::perm_code(next);
      if (index.find(key) != index.end()) continue;
      if (static_cast<int>(elems.size()) >= max_order)
        throw CapacityError("generated group exceeds max order " + std::to_string(max_order));
      index.emplace(key, static_cast<int>(elems.size()));
      elems.push_back(std::move(next));
    }
  }
  std::vector<std::string> labels(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) labels[i] = detail::perm_label(elems[i]);
  return detail::group_from_perm_list(elems, std::move(labels), std::move(name));
}

/// Built-in group lookup: "z<n>", "d<n>", "s<n>" (n <= 7). "s3" uses the
/// presentation-fixed element order above.
inline FiniteGroup builtin_group(const std::string& name) {
  if (name.size() < 2) throw ArgumentError("unknown builtin group: " + name);
  const char kind = name[0];
  int n = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') throw ArgumentError("unknown builtin group: " + name);
    n = n * 10 + (name[i] - '0');
  }
  switch (kind) {
    case 'z': return cyclic_group(n);
    case 'd': return dihedral_group(n);
    case 's': return n == 3 ? s3_presented() : symmetric_group(n);
    default: throw ArgumentError("unknown builtin group: " + name);
  }
}

}  // namespace qd
