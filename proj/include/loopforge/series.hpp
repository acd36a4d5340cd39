#pragma once

// The lower central series, the commutator-associator filtration and its
// naive variant, over finite loops.
//
// The commutator-associator subloop L_i is normally generated by weighted
// commutators, associators and deviations of every level. That definition
// quantifies over infinitely many deviation levels and unbounded weights;
// here chain[i] is generated from the finite reduced set
//   (1) commutators [a,b], a in L_p, b in L_q, p+q = i,
//   (2) deviations of level n, one block per composition of i into n+3
//       positive parts, for every n with n+3 <= i,
//   (3) all deviations of level n0 = max(i-3, 0) with unrestricted
//       arguments (for i >= 3 this is the all-ones composition of (2)).
// This reduction is exact, not a heuristic:
//   (i)  L_p contains L_{p+1}, so a generator of weight > i is an instance
//        of one of weight exactly i with some arguments promoted to larger
//        subloops;
//   (ii) every deviation of level n >= n0 has weight >= n+3 >= i
//        automatically, and a level-(n+1) value is (A A')\A'' built from
//        three level-n values, so any set containing all level-n0 values
//        and closed under product and left division - the normal closure is
//        such a set - contains all higher levels too.
// The reduction is unit-tested against the brute-force extension (one more
// level, weight-(i+1) vectors) on small loops.

#include "loopforge/cayley.hpp"
#include "loopforge/term.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace loopforge {

enum class SeriesKind { Gamma, CA, Naive };

std::string series_kind_name(SeriesKind kind);

struct SeriesOptions {
    int depth = 5;
    // Per-term cap on deviation/associator evaluations. A block that would
    // exceed it is sampled instead and the term is reported as a lower bound.
    std::uint64_t max_evals = 20'000'000;
    int threads = 0; // 0 = worker_count()
    std::uint64_t sample_seed = 0x100f'f04e'5eed'0001ULL;
};

struct Filtration {
    SeriesKind kind = SeriesKind::Gamma;
    CayleyLoop loop;
    std::vector<std::vector<int>> terms; // terms[0] = L_1 = whole loop
    std::vector<bool> exact;             // per term; false = lower bound
    int stabilized_at = 0;               // first i with |L_i| = 1, 0 if not reached
    bool lower_bound = false;

    int depth() const { return static_cast<int>(terms.size()); }
    const std::vector<int>& term(int i) const { return terms.at(static_cast<std::size_t>(i - 1)); }
    bool term_exact(int i) const { return exact.at(static_cast<std::size_t>(i - 1)); }
};

Filtration lower_central_series(const CayleyLoop& loop, const SeriesOptions& opts = {});
Filtration ca_filtration(const CayleyLoop& loop, const SeriesOptions& opts = {});
Filtration naive_filtration(const CayleyLoop& loop, const SeriesOptions& opts = {});

struct SeriesComparison {
    Filtration gamma, ca, naive;
    bool gamma2_eq_ca2 = false;   // exact set equality of the second terms
    bool containments_ok = false; // gamma_i <= L_i and naive L_i <= CA L_i, all i
    bool gamma_eq_ca = false;
    bool naive_eq_ca = false;
};

SeriesComparison compare_series(const CayleyLoop& loop, const SeriesOptions& opts = {});

nlohmann::json filtration_to_json(const Filtration& f);
nlohmann::json comparison_to_json(const SeriesComparison& c);

// Associator/deviation evaluation on a Cayley table, with a precomputed
// order^3 associator table. Memoization is caller-owned so scans can run one
// memo per worker.
class DeviationEvaluator {
public:
    explicit DeviationEvaluator(const CayleyLoop& loop);

    int assoc(int a, int b, int c) const {
        if (!assoc_table_.empty()) {
            std::size_t n = static_cast<std::size_t>(loop_->order());
            return assoc_table_[(static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n +
                                static_cast<std::size_t>(c)];
        }
        return loop_->assoc(a, b, c);
    }

    using Memo = std::unordered_map<std::uint64_t, int>;

    // level = alphas.size(); args.size() = level+3. alphas passed as plain
    // ints (validated upstream).
    int dev(std::span<const int> alphas, std::span<const int> args, Memo* memo) const;

    const CayleyLoop& loop() const { return *loop_; }

private:
    const CayleyLoop* loop_;
    std::vector<std::int16_t> assoc_table_;
    bool can_pack_ = false; // order^10 fits in uint64 (memo keys)
};

// Test hook: the generator set the CA recursion uses for chain[i], given the
// earlier terms. extended additionally includes weight-(i+1) compositions and
// one extra deviation level, for brute-force confirmation of the reduction.
std::vector<int> ca_generator_set(const CayleyLoop& loop,
                                  const std::vector<std::vector<int>>& terms, int i,
                                  bool extended);

} // namespace loopforge
