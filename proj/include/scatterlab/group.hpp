#pragma once

// Finite groups given by multiplication tables, their subgroups, and homomorphisms.

#include "scatterlab/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scatterlab {

using Element = int;

class FiniteGroup {
 public:
  // Validates closure, associativity, identity and inverses.
  static FiniteGroup from_table(std::string name, const std::vector<std::vector<Element>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw Error(ErrorKind::InvalidGroup, "empty multiplication table");
    FiniteGroup g;
    g.name_ = std::move(name);
    g.order_ = n;
    g.table_.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::InvalidGroup, "table is not square");
      for (Element x : row) {
        if (x < 0 || x >= n) throw Error(ErrorKind::InvalidGroup, "table entry out of range");
        g.table_.push_back(x);
      }
    }
    std::optional<Element> identity;
    for (Element e = 0; e < n && !identity; ++e) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
      if (ok) identity = e;
    }
    if (!identity) throw Error(ErrorKind::InvalidGroup, "no identity element");
    g.identity_ = *identity;
    g.inverse_.assign(n, -1);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (g.mul(x, y) == g.identity_ && g.mul(y, x) == g.identity_) {
          g.inverse_[x] = y;
          break;
        }
      }
      if (g.inverse_[x] < 0) throw Error(ErrorKind::InvalidGroup, "element without inverse");
    }
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        for (Element z = 0; z < n; ++z) {
          if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))) {
            throw Error(ErrorKind::InvalidGroup, "multiplication is not associative");
          }
        }
      }
    }
    return g;
  }

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  bool valid(Element a) const { return a >= 0 && a < order_; }

  std::vector<std::vector<Element>> rows() const {
    std::vector<std::vector<Element>> out(order_);
    for (Element a = 0; a < order_; ++a) {
      for (Element b = 0; b < order_; ++b) out[a].push_back(mul(a, b));
    }
    return out;
  }

  // Same carrier and multiplication; names are ignored.
  bool same_table(const FiniteGroup& other) const { return table_ == other.table_; }

 private:
  std::string name_;
  int order_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
};

// ---------------------------------------------------------------------------
// Built-in groups

inline FiniteGroup cyclic_group(int n) {
  std::vector<std::vector<Element>> rows(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) rows[a].push_back((a + b) % n);
  }
  return FiniteGroup::from_table("Z" + std::to_string(n), rows);
}

// Permutations of {0,1,2} in lexicographic order; composition (p*q)(i) = p(q(i)).
inline FiniteGroup symmetric_group_3() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<Element>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<Element>> rows(perms.size());
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      rows[a].push_back(index_of(c));
    }
  }
  return FiniteGroup::from_table("S3", rows);
}

// Element r^i s^j has index i + 4j, with s r s = r^-1.
inline FiniteGroup dihedral_group_4() {
  std::vector<std::vector<Element>> rows(8);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int i = a % 4, j = a / 4, k = b % 4, l = b / 4;
      // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
      const int rot = ((i + (j == 0 ? k : -k)) % 4 + 4) % 4;
      rows[a].push_back(rot + 4 * ((j + l) % 2));
    }
  }
  return FiniteGroup::from_table("D4", rows);
}

// Indices 0..7 are 1, -1, i, -i, j, -j, k, -k.
inline FiniteGroup quaternion_group() {
  // unit products of the basis 1, i, j, k as (sign, basis)
  const int basis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<Element>> rows(8);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ba = a / 2, bb = b / 2;
      int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign[ba][bb];
      rows[a].push_back(2 * basis[ba][bb] + (s < 0 ? 1 : 0));
    }
  }
  return FiniteGroup::from_table("Q8", rows);
}

inline FiniteGroup trivial_group() { return cyclic_group(1); }

// Accepts Z<n>, S3, D4, Q8 and "trivial".
inline FiniteGroup group_by_name(const std::string& name) {
  if (name == "trivial") return trivial_group();
  if (name == "S3") return symmetric_group_3();
  if (name == "D4") return dihedral_group_4();
  if (name == "Q8") return quaternion_group();
  if (name.size() >= 2 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const int n = std::stoi(name.substr(1));
    if (n >= 1 && n <= 256) return cyclic_group(n);
  }
  throw Error(ErrorKind::InvalidGroup, "unknown group name: " + name);
}

// ---------------------------------------------------------------------------
// Subgroups

// Sorted element set closed under the group operation.
class SubgroupSet {
 public:
  SubgroupSet() = default;

  // Smallest subgroup containing the given elements.
  static SubgroupSet generated(const FiniteGroup& g, std::span<const Element> gens) {
    std::vector<char> seen(g.order(), 0);
    std::deque<Element> queue{g.identity()};
    seen[g.identity()] = 1;
    while (!queue.empty()) {
      const Element x = queue.front();
      queue.pop_front();
      for (Element s : gens) {
        const Element y = g.mul(x, s);
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    }
    SubgroupSet out;
    for (Element x = 0; x < g.order(); ++x) {
      if (seen[x]) out.elements_.push_back(x);
    }
    return out;
  }

  static SubgroupSet trivial(const FiniteGroup& g) { return generated(g, {}); }
  static SubgroupSet whole(const FiniteGroup& g) {
    SubgroupSet out;
    for (Element x = 0; x < g.order(); ++x) out.elements_.push_back(x);
    return out;
  }

  // Checks that the elements form a subgroup.
  static SubgroupSet from_elements(const FiniteGroup& g, std::vector<Element> elems) {
    for (Element x : elems) {
      if (!g.valid(x)) throw Error(ErrorKind::InvalidGroup, "subgroup element out of range");
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto gen = generated(g, elems);
    if (gen.elements_ != elems) throw Error(ErrorKind::InvalidGroup, "element set is not a subgroup");
    return gen;
  }

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Element x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }
  bool subset_of(const SubgroupSet& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
  }

  friend bool operator==(const SubgroupSet&, const SubgroupSet&) = default;
  friend auto operator<=>(const SubgroupSet&, const SubgroupSet&) = default;

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(elements_[i]);
    }
    return out + "}";
  }

 private:
  std::vector<Element> elements_;
};

inline SubgroupSet intersection(const FiniteGroup& g, const SubgroupSet& a, const SubgroupSet& b) {
  std::vector<Element> common;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(common));
  return SubgroupSet::from_elements(g, common);
}

// Every subgroup, obtained by repeatedly adjoining single elements starting from {e}.
inline std::vector<SubgroupSet> all_subgroups(const FiniteGroup& g) {
  std::vector<SubgroupSet> found{SubgroupSet::trivial(g)};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Element x = 0; x < g.order(); ++x) {
      if (found[i].contains(x)) continue;
      auto gens = found[i].elements();
      gens.push_back(x);
      auto h = SubgroupSet::generated(g, gens);
      if (std::find(found.begin(), found.end(), h) == found.end()) found.push_back(h);
    }
  }
  std::sort(found.begin(), found.end(), [](const SubgroupSet& a, const SubgroupSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct Hom {
  std::vector<Element> images;  // images[x] = f(x)

  Element operator()(Element x) const { return images[x]; }
  friend bool operator==(const Hom&, const Hom&) = default;
};

inline bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const Hom& f) {
  if (static_cast<int>(f.images.size()) != from.order()) return false;
  for (Element a = 0; a < from.order(); ++a) {
    for (Element b = 0; b < from.order(); ++b) {
      if (f(from.mul(a, b)) != to.mul(f(a), f(b))) return false;
    }
  }
  return true;
}

inline SubgroupSet image(const FiniteGroup& to, const Hom& f, const SubgroupSet& h) {
  std::vector<Element> out;
  for (Element x : h.elements()) out.push_back(f(x));
  return SubgroupSet::generated(to, out);
}

inline bool maps_into(const Hom& f, const SubgroupSet& source, const SubgroupSet& target) {
  return std::all_of(source.elements().begin(), source.elements().end(),
                     [&](Element x) { return target.contains(f(x)); });
}

// Lexicographically first generating set of minimum size.
inline std::vector<Element> minimal_generating_set(const FiniteGroup& g) {
  const int n = g.order();
  for (int r = 0; r <= n; ++r) {
    std::vector<Element> pick(r);
    for (int i = 0; i < r; ++i) pick[i] = i;
    for (;;) {
      if (static_cast<int>(SubgroupSet::generated(g, pick).size()) == n) return pick;
      int i = r - 1;
      while (i >= 0 && pick[i] == n - r + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};
}

constexpr std::int64_t kDefaultHomBudget = 4096;

// All homomorphisms from -> to. Generator images run through `to` in lexicographic order
// (first generator most significant); each candidate is extended along a breadth-first
// spanning tree and then verified against the full table.
inline std::vector<Hom> enumerate_homs(const FiniteGroup& from, const FiniteGroup& to,
                                       std::int64_t budget = kDefaultHomBudget) {
  if (static_cast<std::int64_t>(from.order()) * to.order() > budget) {
    throw Error(ErrorKind::BudgetExceeded, "homomorphism search " + from.name() + " -> " + to.name() +
                                               " exceeds budget " + std::to_string(budget));
  }
  const auto gens = minimal_generating_set(from);
  // tree[x] = (parent, generator slot) with x = parent * gens[slot]
  std::vector<std::pair<Element, int>> tree(from.order(), {-1, -1});
  std::vector<Element> bfs{from.identity()};
  std::vector<char> seen(from.order(), 0);
  seen[from.identity()] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (int s = 0; s < static_cast<int>(gens.size()); ++s) {
      const Element y = from.mul(bfs[i], gens[s]);
      if (!seen[y]) {
        seen[y] = 1;
        tree[y] = {bfs[i], s};
        bfs.push_back(y);
      }
    }
  }
  std::vector<Hom> out;
  std::vector<Element> choice(gens.size(), 0);
  for (;;) {
    Hom f{std::vector<Element>(from.order(), to.identity())};
    for (std::size_t i = 1; i < bfs.size(); ++i) {
      const auto [parent, slot] = tree[bfs[i]];
      f.images[bfs[i]] = to.mul(f.images[parent], choice[slot]);
    }
    if (is_homomorphism(from, to, f)) out.push_back(std::move(f));
    int i = static_cast<int>(choice.size()) - 1;
    while (i >= 0 && choice[i] == to.order() - 1) choice[i--] = 0;
    if (i < 0) break;
    ++choice[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline FiniteGroup group_from_json(const nlohmann::json& j) {
  if (j.is_string()) return group_by_name(j.get<std::string>());
  if (!j.is_object() || !j.contains("mul")) throw Error(ErrorKind::InvalidGroup, "group needs a \"mul\" table");
  auto rows = j.at("mul").get<std::vector<std::vector<Element>>>();
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(rows.size())) {
    throw Error(ErrorKind::InvalidGroup, "declared order does not match the table");
  }
  return FiniteGroup::from_table(j.value("name", std::string("G")), rows);
}

inline nlohmann::json to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"mul", g.rows()}, {"name", g.name()}};
}

}  // namespace scatterlab
