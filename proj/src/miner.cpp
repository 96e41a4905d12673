#include "minebench/miner.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <unordered_set>

#include "minebench/serialize.hpp"

namespace minebench {

namespace {

// A subject-object pair flattened into one value vector: subject attributes
// first, then object attributes.
using FlatPair = std::vector<int>;

struct MiningView {
    int n_subject_attrs = 0;
    int total_attrs = 0;
    std::vector<FlatPair> permits;        // unique permit pairs
    std::vector<std::int64_t> weights;    // cells per unique permit pair
    std::vector<FlatPair> denies;         // unique deny pairs
};

FlatPair flatten(const EntityProfile& s, const EntityProfile& o) {
    FlatPair flat;
    flat.reserve(s.values.size() + o.values.size());
    flat.insert(flat.end(), s.values.begin(), s.values.end());
    flat.insert(flat.end(), o.values.begin(), o.values.end());
    return flat;
}

MiningView build_view(const std::vector<AccessTriple>& dataset) {
    MiningView view;
    view.n_subject_attrs = dataset.front().subject.attribute_count();
    view.total_attrs = view.n_subject_attrs + dataset.front().object.attribute_count();

    std::map<FlatPair, std::int64_t> permit_counts;
    std::map<FlatPair, int> deny_seen;
    for (const AccessTriple& triple : dataset) {
        FlatPair flat = flatten(triple.subject, triple.object);
        if (triple.permitted) {
            ++permit_counts[std::move(flat)];
        } else {
            deny_seen.emplace(std::move(flat), 0);
        }
    }
    for (auto& [flat, count] : permit_counts) {
        view.permits.push_back(flat);
        view.weights.push_back(count);
    }
    for (auto& [flat, unused] : deny_seen) view.denies.push_back(flat);
    return view;
}

std::vector<AccessTriple> scenario_triples(const Scenario& scenario) {
    std::vector<AccessTriple> triples;
    triples.reserve(static_cast<std::size_t>(scenario.acm.cell_count()));
    for (std::size_t i = 0; i < scenario.subjects.size(); ++i) {
        for (std::size_t j = 0; j < scenario.objects.size(); ++j) {
            triples.push_back({scenario.subjects[i], scenario.objects[j],
                               scenario.acm.at(static_cast<int>(i), static_cast<int>(j)) != 0});
        }
    }
    return triples;
}

// Candidate rule: the attributes selected by `mask` pinned to the values of
// `source`. Attribute k is a subject attribute for k < n_subject_attrs.
struct Candidate {
    std::uint64_t mask = 0;
    FlatPair source;
    std::string emission;
    int condition_count = 0;
};

bool mask_matches(std::uint64_t mask, const FlatPair& source, const FlatPair& pair) {
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        int k = std::countr_zero(m);
        if (pair[static_cast<std::size_t>(k)] != source[static_cast<std::size_t>(k)]) return false;
    }
    return true;
}

bool matches_any_deny(const MiningView& view, std::uint64_t mask, const FlatPair& source) {
    for (const FlatPair& deny : view.denies) {
        if (mask_matches(mask, source, deny)) return true;
    }
    return false;
}

Rule to_rule(const MiningView& view, const Candidate& c) {
    Rule rule;
    rule.decision = Decision::Permit;
    for (std::uint64_t m = c.mask; m != 0; m &= m - 1) {
        int k = std::countr_zero(m);
        AttributeValue cond;
        if (k < view.n_subject_attrs) {
            cond.attr = {AttributeKind::Subject, k + 1};
        } else {
            cond.attr = {AttributeKind::Object, k - view.n_subject_attrs + 1};
        }
        cond.value_index = c.source[static_cast<std::size_t>(k)];
        rule.conditions.push_back(cond);
    }
    return normalize_rule(rule);
}

// Condition-drop order: object attributes by descending index, then subject
// attributes by descending index.
std::vector<int> drop_order(const MiningView& view) {
    std::vector<int> order;
    for (int k = view.total_attrs - 1; k >= view.n_subject_attrs; --k) order.push_back(k);
    for (int k = view.n_subject_attrs - 1; k >= 0; --k) order.push_back(k);
    return order;
}

void add_candidate(const MiningView& view, std::uint64_t mask, const FlatPair& source,
                   std::vector<Candidate>& out, std::unordered_set<std::string>& seen) {
    Candidate c;
    c.mask = mask;
    c.source = source;
    c.emission = emit_rule_line(to_rule(view, c));
    if (!seen.insert(c.emission).second) return;
    c.condition_count = std::popcount(mask);
    out.push_back(std::move(c));
}

std::vector<Candidate> collect_candidates(const MiningView& view, bool pairwise_commons) {
    std::vector<Candidate> candidates;
    std::unordered_set<std::string> seen;
    std::uint64_t full_mask =
        view.total_attrs == 64 ? ~0ull : (1ull << view.total_attrs) - 1;

    // Per-cell greedy generalization.
    std::vector<int> order = drop_order(view);
    for (const FlatPair& permit : view.permits) {
        std::uint64_t mask = full_mask;
        for (int k : order) {
            std::uint64_t attempt = mask & ~(1ull << k);
            if (!matches_any_deny(view, attempt, permit)) mask = attempt;
        }
        add_candidate(view, mask, permit, candidates, seen);
    }

    // Common attribute patterns across pairs of permit cells.
    if (pairwise_commons) {
        std::unordered_set<std::string> checked;
        for (std::size_t a = 0; a < view.permits.size(); ++a) {
            for (std::size_t b = a + 1; b < view.permits.size(); ++b) {
                std::uint64_t mask = 0;
                for (int k = 0; k < view.total_attrs; ++k) {
                    if (view.permits[a][static_cast<std::size_t>(k)] ==
                        view.permits[b][static_cast<std::size_t>(k)]) {
                        mask |= 1ull << k;
                    }
                }
                if (mask == 0 && !view.denies.empty()) continue;
                Candidate probe;
                probe.mask = mask;
                probe.source = view.permits[a];
                probe.emission = emit_rule_line(to_rule(view, probe));
                if (!checked.insert(probe.emission).second) continue;
                if (matches_any_deny(view, mask, view.permits[a])) continue;
                if (seen.insert(probe.emission).second) {
                    probe.condition_count = std::popcount(mask);
                    candidates.push_back(std::move(probe));
                }
            }
        }
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& x, const Candidate& y) { return x.emission < y.emission; });
    return candidates;
}

// Coverage bitsets over the unique permit pairs.
std::vector<std::vector<std::uint64_t>> coverage_sets(const MiningView& view,
                                                      const std::vector<Candidate>& candidates) {
    std::size_t words = (view.permits.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> covers(candidates.size(),
                                                   std::vector<std::uint64_t>(words, 0));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        for (std::size_t p = 0; p < view.permits.size(); ++p) {
            if (mask_matches(candidates[c].mask, candidates[c].source, view.permits[p])) {
                covers[c][p / 64] |= 1ull << (p % 64);
            }
        }
    }
    return covers;
}

} // namespace

PolicySet mine_generalize_validate(const std::vector<AccessTriple>& dataset, bool allow_empty) {
    bool any_permit = false;
    for (const AccessTriple& t : dataset) any_permit |= t.permitted;
    if (!any_permit) {
        if (allow_empty) return {};
        throw NoPermits("dataset has no permit entries to mine");
    }

    MiningView view = build_view(dataset);
    std::vector<Candidate> candidates = collect_candidates(view, /*pairwise_commons=*/true);
    auto covers = coverage_sets(view, candidates);

    std::size_t n_permits = view.permits.size();
    std::size_t words = (n_permits + 63) / 64;
    std::vector<std::uint64_t> uncovered(words, 0);
    for (std::size_t p = 0; p < n_permits; ++p) uncovered[p / 64] |= 1ull << (p % 64);

    PolicySet policy;
    std::int64_t remaining = n_permits ? 1 : 0;
    while (remaining) {
        int best = -1;
        std::int64_t best_weight = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            std::int64_t weight = 0;
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t overlap = covers[c][w] & uncovered[w];
                while (overlap) {
                    int bit = std::countr_zero(overlap);
                    weight += view.weights[w * 64 + static_cast<std::size_t>(bit)];
                    overlap &= overlap - 1;
                }
            }
            if (weight == 0) continue;
            // Candidates are in ascending emission order, so strict
            // comparisons implement the lexicographic tie-break.
            if (best == -1 || weight > best_weight ||
                (weight == best_weight && candidates[c].condition_count <
                                              candidates[static_cast<std::size_t>(best)]
                                                  .condition_count)) {
                best = static_cast<int>(c);
                best_weight = weight;
            }
        }
        policy.rules.push_back(to_rule(view, candidates[static_cast<std::size_t>(best)]));
        remaining = 0;
        for (std::size_t w = 0; w < words; ++w) {
            uncovered[w] &= ~covers[static_cast<std::size_t>(best)][w];
            remaining += static_cast<std::int64_t>(std::popcount(uncovered[w]));
        }
    }
    return policy;
}

PolicySet exact_minimal_policy(const Scenario& scenario, int size_budget) {
    MiningView view = build_view(scenario);
    if (view.total_attrs > 6) {
        throw ScaleExceeded("exact search limited to 6 total attributes");
    }
    if (scenario.acm.cell_count() > 64) {
        throw ScaleExceeded("exact search limited to 64 cells");
    }
    if (size_budget < 1 || size_budget > 4) {
        throw ScaleExceeded("exact search budget must be in [1, 4]");
    }
    if (view.permits.empty()) return {};

    // All sound condition subsets derived from permit cells.
    std::vector<Candidate> candidates;
    std::unordered_set<std::string> seen;
    std::uint64_t full_mask = (1ull << view.total_attrs) - 1;
    for (const FlatPair& permit : view.permits) {
        for (std::uint64_t mask = 0; mask <= full_mask; ++mask) {
            if (matches_any_deny(view, mask, permit)) continue;
            add_candidate(view, mask, permit, candidates, seen);
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& x, const Candidate& y) { return x.emission < y.emission; });

    std::size_t n_permits = view.permits.size();  // <= 64 cells, so one word
    std::uint64_t full_cover = n_permits == 64 ? ~0ull : (1ull << n_permits) - 1;
    std::vector<std::uint64_t> covers(candidates.size(), 0);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        for (std::size_t p = 0; p < n_permits; ++p) {
            if (mask_matches(candidates[c].mask, candidates[c].source, view.permits[p])) {
                covers[c] |= 1ull << p;
            }
        }
    }

    // Suffix unions allow pruning branches that can no longer reach a cover.
    std::vector<std::uint64_t> suffix(candidates.size() + 1, 0);
    for (std::size_t c = candidates.size(); c-- > 0;) suffix[c] = suffix[c + 1] | covers[c];

    std::vector<int> chosen;
    // Depth-first search in candidate order; the first cover found at the
    // smallest size is the lexicographically smallest minimal policy.
    auto search = [&](auto&& self, std::size_t from, std::uint64_t covered, int slots) -> bool {
        if (covered == full_cover) return true;
        if (slots == 0) return false;
        for (std::size_t c = from; c < candidates.size(); ++c) {
            if ((covered | suffix[c]) != full_cover) return false;
            if ((covers[c] & ~covered) == 0) continue;
            chosen.push_back(static_cast<int>(c));
            if (self(self, c + 1, covered | covers[c], slots - 1)) return true;
            chosen.pop_back();
        }
        return false;
    };

    for (int size = 1; size <= size_budget; ++size) {
        chosen.clear();
        if (search(search, 0, 0, size)) {
            PolicySet policy;
            for (int c : chosen) policy.rules.push_back(to_rule(view, candidates[static_cast<std::size_t>(c)]));
            return policy;
        }
    }
    throw BudgetExceeded("no policy of size <= " + std::to_string(size_budget) +
                         " reproduces the matrix");
}

} // namespace minebench
