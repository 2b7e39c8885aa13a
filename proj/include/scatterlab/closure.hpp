#pragma once

// Closure operators on subgroup lattices of finite groups.
//
// A closure pair (T, g) lives in a finite test group P. A subgroup H of G is
// (T, g)-closed when every homomorphism f: P -> G with f(T) in H has f(g) in H. The
// closure of H is built in stages: H_0 = H, and H_{k+1} is generated by H_k together
// with all f(g) for f(T) in H_k. In a finite group the stages stabilise after at most
// |G| steps, so stage indices (ranks) are natural numbers.
//
// This models the operator theory only. The pairs of interest for the Hawaiian earring
// live on an uncountable fundamental group and have no faithful finite model.

#include "scatterlab/error.hpp"
#include "scatterlab/group.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace scatterlab {

struct ClosurePair {
  FiniteGroup test_group;
  SubgroupSet T;
  Element g = 0;

  static ClosurePair make(FiniteGroup test_group, std::vector<Element> t, Element g) {
    if (!test_group.valid(g)) throw Error(ErrorKind::InvalidGroup, "pair element out of range");
    auto sub = SubgroupSet::from_elements(test_group, std::move(t));
    return ClosurePair{std::move(test_group), std::move(sub), g};
  }

  std::string str() const { return "(" + test_group.name() + ", " + T.str() + ", " + std::to_string(g) + ")"; }
};

// Homomorphisms from the test group, computed once per (pair, target) evaluation.
class PairMaps {
 public:
  PairMaps(const FiniteGroup& target, const ClosurePair& pair, std::int64_t budget = kDefaultHomBudget)
      : target_(&target), pair_(&pair), homs_(enumerate_homs(pair.test_group, target, budget)) {}

  // Images f(g) over all f with f(T) contained in h.
  std::vector<Element> forced(const SubgroupSet& h) const {
    std::vector<Element> out;
    for (const auto& f : homs_) {
      if (maps_into(f, pair_->T, h)) out.push_back(f(pair_->g));
    }
    return out;
  }

  bool closed(const SubgroupSet& h) const {
    for (Element x : forced(h)) {
      if (!h.contains(x)) return false;
    }
    return true;
  }

  const std::vector<Hom>& homs() const { return homs_; }
  const FiniteGroup& target() const { return *target_; }

 private:
  const FiniteGroup* target_;
  const ClosurePair* pair_;
  std::vector<Hom> homs_;
};

struct ClosureResult {
  SubgroupSet closure;
  std::vector<SubgroupSet> stages;  // stages[0] = H, last = fixpoint
};

inline bool is_closed(const FiniteGroup& g, const SubgroupSet& h, const ClosurePair& pair,
                      std::int64_t budget = kDefaultHomBudget) {
  return PairMaps(g, pair, budget).closed(h);
}

inline ClosureResult closure(const PairMaps& maps, const SubgroupSet& h) {
  ClosureResult result;
  result.stages.push_back(h);
  for (;;) {
    const auto& current = result.stages.back();
    auto gens = current.elements();
    for (Element x : maps.forced(current)) gens.push_back(x);
    auto next = SubgroupSet::generated(maps.target(), gens);
    if (next == current) break;
    result.stages.push_back(std::move(next));
  }
  result.closure = result.stages.back();
  return result;
}

inline ClosureResult closure(const FiniteGroup& g, const SubgroupSet& h, const ClosurePair& pair,
                             std::int64_t budget = kDefaultHomBudget) {
  return closure(PairMaps(g, pair, budget), h);
}

// Index of the first stage containing a.
inline std::size_t element_rank(const ClosureResult& result, Element a) {
  for (std::size_t k = 0; k < result.stages.size(); ++k) {
    if (result.stages[k].contains(a)) return k;
  }
  throw Error(ErrorKind::NotInClosure, "element " + std::to_string(a) + " is not in the closure");
}

inline std::size_t element_rank(const FiniteGroup& g, const SubgroupSet& h, const ClosurePair& pair, Element a,
                                std::int64_t budget = kDefaultHomBudget) {
  return element_rank(closure(g, h, pair, budget), a);
}

struct CorpusEntry {
  FiniteGroup group;
  SubgroupSet subgroup;
};

struct ComparisonRow {
  std::string group;
  SubgroupSet subgroup;
  SubgroupSet closure_first;
  SubgroupSet closure_second;
  bool contained = false;  // closure_second within closure_first
};

struct ComparisonReport {
  bool criterion = false;  // g2 in cl_{pair1}(T2), computed in the test group
  SubgroupSet criterion_closure;
  std::vector<ComparisonRow> rows;
  bool containment_everywhere = true;
  bool violation = false;  // criterion holds but some containment fails
};

inline ComparisonReport compare_pairs(const ClosurePair& first, const ClosurePair& second,
                                      const std::vector<CorpusEntry>& corpus,
                                      std::int64_t budget = kDefaultHomBudget) {
  if (!first.test_group.same_table(second.test_group)) {
    throw Error(ErrorKind::MismatchedTestGroups, "closure pairs use different test groups");
  }
  ComparisonReport report;
  report.criterion_closure = closure(first.test_group, second.T, first, budget).closure;
  report.criterion = report.criterion_closure.contains(second.g);
  for (const auto& entry : corpus) {
    ComparisonRow row;
    row.group = entry.group.name();
    row.subgroup = entry.subgroup;
    row.closure_first = closure(entry.group, entry.subgroup, first, budget).closure;
    row.closure_second = closure(entry.group, entry.subgroup, second, budget).closure;
    row.contained = row.closure_second.subset_of(row.closure_first);
    report.containment_everywhere = report.containment_everywhere && row.contained;
    report.rows.push_back(std::move(row));
  }
  report.violation = report.criterion && !report.containment_everywhere;
  return report;
}

// ---------------------------------------------------------------------------
// JSON

inline ClosurePair pair_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("test_group") || !j.contains("T") || !j.contains("g")) {
    throw Error(ErrorKind::InvalidGroup, "pair needs test_group, T and g");
  }
  return ClosurePair::make(group_from_json(j.at("test_group")), j.at("T").get<std::vector<Element>>(),
                           j.at("g").get<Element>());
}

// Array of {"group": <group or name>, "H": [...]}; omitting "H" adds every subgroup.
inline std::vector<CorpusEntry> corpus_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidGroup, "corpus must be a JSON array");
  std::vector<CorpusEntry> out;
  for (const auto& item : j) {
    auto group = group_from_json(item.at("group"));
    if (item.contains("H")) {
      auto h = SubgroupSet::from_elements(group, item.at("H").get<std::vector<Element>>());
      out.push_back({group, h});
    } else {
      for (const auto& h : all_subgroups(group)) out.push_back({group, h});
    }
  }
  return out;
}

}  // namespace scatterlab
