#include "loopforge/series.hpp"

#include "loopforge/parallel.hpp"

#include <algorithm>
#include <random>

#include <nlohmann/json.hpp>

namespace loopforge {

std::string series_kind_name(SeriesKind kind) {
    switch (kind) {
    case SeriesKind::Gamma: return "gamma";
    case SeriesKind::CA: return "ca";
    case SeriesKind::Naive: return "naive";
    }
    return "?";
}

DeviationEvaluator::DeviationEvaluator(const CayleyLoop& loop) : loop_(&loop) {
    std::size_t n = static_cast<std::size_t>(loop.order());
    if (n * n * n <= (1u << 24)) {
        assoc_table_.resize(n * n * n);
        for (int a = 0; a < loop.order(); ++a)
            for (int b = 0; b < loop.order(); ++b)
                for (int c = 0; c < loop.order(); ++c)
                    assoc_table_[(static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n +
                                 static_cast<std::size_t>(c)] =
                        static_cast<std::int16_t>(loop.assoc(a, b, c));
    }
    // memo keys pack up to 10 base-order digits plus a short alpha word
    can_pack_ = true;
    std::uint64_t cap = 1;
    for (int k = 0; k < 10 && can_pack_; ++k) {
        if (cap > (1ULL << 57) / static_cast<std::uint64_t>(std::max(loop.order(), 2)))
            can_pack_ = false;
        else
            cap *= static_cast<std::uint64_t>(std::max(loop.order(), 2));
    }
}

int DeviationEvaluator::dev(std::span<const int> alphas, std::span<const int> args,
                            Memo* memo) const {
    int level = static_cast<int>(alphas.size());
    if (level == 0) return assoc(args[0], args[1], args[2]);
    std::uint64_t key = 0;
    if (memo && can_pack_ && level <= 7) {
        for (int v : args) key = key * static_cast<std::uint64_t>(loop_->order()) + static_cast<std::uint64_t>(v);
        for (int a : alphas) key = key * 11 + static_cast<std::uint64_t>(a);
        key = key * 11 + static_cast<std::uint64_t>(level);
        auto it = memo->find(key);
        if (it != memo->end()) return it->second;
    } else {
        memo = nullptr;
    }
    int t = alphas[static_cast<std::size_t>(level - 1)];
    std::span<const int> prefix = alphas.first(static_cast<std::size_t>(level - 1));
    std::vector<int> sub(args.begin(), args.end());
    sub.erase(sub.begin() + t);
    auto at = [&](int x) {
        sub[static_cast<std::size_t>(t - 1)] = x;
        return dev(prefix, std::span<const int>(sub), memo);
    };
    int u = at(args[static_cast<std::size_t>(t - 1)]);
    int v = at(args[static_cast<std::size_t>(t)]);
    int w = at(loop_->mul(args[static_cast<std::size_t>(t - 1)], args[static_cast<std::size_t>(t)]));
    int result = loop_->ldiv(loop_->mul(u, v), w);
    if (memo) (*memo)[key] = result;
    return result;
}

namespace {

void compositions_rec(int total, int parts, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = 1; first <= total - (parts - 1); ++first) {
        cur.push_back(first);
        compositions_rec(total - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

// all compositions of total into `parts` positive parts, lexicographic
std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts < 1 || total < parts) return out;
    std::vector<int> cur;
    compositions_rec(total, parts, cur, out);
    return out;
}

// Marks generator values produced by commutator / deviation blocks over
// member-list sources. A deviation block that would exceed the remaining
// budget is sampled deterministically instead.
class GeneratorScan {
public:
    GeneratorScan(const DeviationEvaluator& ev, std::uint64_t budget, std::uint64_t seed,
                  int threads)
        : ev_(&ev), remaining_(budget), seed_(seed),
          threads_(threads > 0 ? threads : worker_count()),
          found_(static_cast<std::size_t>(ev.loop().order()), 0) {}

    bool sampled() const { return sampled_; }

    std::vector<int> values() const {
        std::vector<int> out;
        for (int v = 0; v < static_cast<int>(found_.size()); ++v)
            if (found_[static_cast<std::size_t>(v)]) out.push_back(v);
        return out;
    }

    void commutators(const std::vector<int>& as, const std::vector<int>& bs) {
        const CayleyLoop& L = ev_->loop();
        for (int a : as)
            for (int b : bs) found_[static_cast<std::size_t>(L.com(a, b))] = 1;
    }

    // one block: every alpha of the level over the product of the sources
    void deviations(int level, const std::vector<const std::vector<int>*>& sources) {
        std::vector<AlphaSequence> alphas = enumerate_alphas(level);
        std::uint64_t tuples = 1;
        bool overflow = false;
        for (const auto* s : sources) {
            if (s->empty()) return;
            if (tuples > UINT64_MAX / s->size()) overflow = true;
            else tuples *= s->size();
        }
        std::uint64_t per_tuple = std::max<std::uint64_t>(alphas.size(), 1);
        if (!overflow && tuples <= remaining_ / per_tuple) {
            remaining_ -= tuples * per_tuple;
            run_block(alphas, sources, tuples, nullptr);
        } else {
            sampled_ = true;
            std::uint64_t n_samples = std::max<std::uint64_t>(remaining_ / per_tuple, 1024);
            remaining_ = 0;
            std::vector<int> samples = draw_samples(sources, n_samples);
            run_block(alphas, sources, n_samples, &samples);
        }
    }

private:
    const DeviationEvaluator* ev_;
    std::uint64_t remaining_;
    std::uint64_t seed_;
    int threads_;
    bool sampled_ = false;
    std::vector<std::uint8_t> found_;

    std::vector<int> draw_samples(const std::vector<const std::vector<int>*>& sources,
                                  std::uint64_t n_samples) {
        // drawn up front so the result is independent of the worker count
        int arity = static_cast<int>(sources.size());
        std::mt19937_64 rng(seed_ ^ (static_cast<std::uint64_t>(arity) << 32));
        std::vector<int> samples(static_cast<std::size_t>(n_samples) * static_cast<std::size_t>(arity));
        for (std::uint64_t s = 0; s < n_samples; ++s)
            for (int k = 0; k < arity; ++k) {
                const auto& src = *sources[static_cast<std::size_t>(k)];
                samples[static_cast<std::size_t>(s) * static_cast<std::size_t>(arity) +
                        static_cast<std::size_t>(k)] = src[static_cast<std::size_t>(rng() % src.size())];
            }
        return samples;
    }

    // samples == nullptr: exhaustive over the mixed-radix tuple index
    void run_block(const std::vector<AlphaSequence>& alphas,
                   const std::vector<const std::vector<int>*>& sources, std::uint64_t count,
                   const std::vector<int>* samples) {
        int arity = static_cast<int>(sources.size());
        std::vector<std::vector<std::uint8_t>> local(
            static_cast<std::size_t>(threads_), std::vector<std::uint8_t>(found_.size(), 0));
        parallel_chunks(count, threads_, [&](std::uint64_t begin, std::uint64_t end, int worker) {
            std::vector<std::uint8_t>& mine = local[static_cast<std::size_t>(worker)];
            DeviationEvaluator::Memo memo;
            std::vector<int> args(static_cast<std::size_t>(arity));
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                if (samples) {
                    for (int k = 0; k < arity; ++k)
                        args[static_cast<std::size_t>(k)] =
                            (*samples)[static_cast<std::size_t>(idx) * static_cast<std::size_t>(arity) +
                                       static_cast<std::size_t>(k)];
                } else {
                    std::uint64_t rest = idx;
                    for (int k = arity - 1; k >= 0; --k) {
                        const auto& src = *sources[static_cast<std::size_t>(k)];
                        args[static_cast<std::size_t>(k)] = src[static_cast<std::size_t>(rest % src.size())];
                        rest /= src.size();
                    }
                }
                for (const auto& a : alphas)
                    mine[static_cast<std::size_t>(ev_->dev(a.values(), args, &memo))] = 1;
            }
        });
        for (const auto& l : local)
            for (std::size_t v = 0; v < found_.size(); ++v) found_[v] |= l[v];
    }
};

// generator scan for CA / naive chain[i] given terms 1..i-1
void scan_term_generators(GeneratorScan& scan, const std::vector<std::vector<int>>& terms, int i,
                          bool with_deviations, bool extended) {
    auto term = [&](int p) -> const std::vector<int>& {
        return terms.at(static_cast<std::size_t>(p - 1));
    };
    std::vector<int> weights = {i};
    if (extended) weights.push_back(i + 1);
    for (int s : weights)
        for (const auto& comp : compositions(s, 2)) {
            if (comp[0] >= i || comp[1] >= i) continue; // only computed terms are available
            scan.commutators(term(comp[0]), term(comp[1]));
        }
    int max_level = with_deviations ? std::max(i - 3, 0) : 0;
    if (extended) ++max_level;
    for (int n = 0; n <= max_level; ++n) {
        for (int s : weights) {
            int target = std::max(s, n + 3);
            for (const auto& comp : compositions(target, n + 3)) {
                bool ok = true;
                for (int p : comp)
                    if (p >= i) { ok = false; break; }
                if (!ok) continue;
                std::vector<const std::vector<int>*> sources;
                sources.reserve(comp.size());
                for (int p : comp) sources.push_back(&term(p));
                scan.deviations(n, sources);
            }
        }
    }
}

Filtration run_series(const CayleyLoop& loop, SeriesKind kind, const SeriesOptions& opts) {
    if (opts.depth < 1) throw LoopError("series depth must be >= 1");
    Filtration f;
    f.kind = kind;
    f.loop = loop;
    std::vector<int> whole(static_cast<std::size_t>(loop.order()));
    for (int v = 0; v < loop.order(); ++v) whole[static_cast<std::size_t>(v)] = v;
    f.terms.push_back(std::move(whole));
    f.exact.push_back(true);
    DeviationEvaluator ev(f.loop);
    for (int i = 2; i <= opts.depth; ++i) {
        const std::vector<int>& prev = f.terms.back();
        bool prev_exact = f.exact.back();
        if (prev.size() == 1) { // stabilized at the trivial subloop
            f.terms.push_back(prev);
            f.exact.push_back(prev_exact);
            continue;
        }
        std::vector<int> members;
        bool sampled = false;
        if (kind == SeriesKind::Gamma) {
            NormalSubloop N(f.loop, prev);
            members = bracket_nl(N, f.loop).members();
        } else {
            GeneratorScan scan(ev, opts.max_evals, opts.sample_seed + static_cast<std::uint64_t>(i),
                               opts.threads);
            scan_term_generators(scan, f.terms, i, kind == SeriesKind::CA, false);
            sampled = scan.sampled();
            members = normal_closure(f.loop, scan.values()).members();
        }
        bool exact = prev_exact && !sampled;
        if (!exact) {
            // sampling can lose the structural descent; restore it (the
            // intersection of normal subloops is normal and still a lower
            // bound for the true term)
            std::vector<int> cut;
            std::set_intersection(members.begin(), members.end(), prev.begin(), prev.end(),
                                  std::back_inserter(cut));
            members = std::move(cut);
        } else {
            if (!std::includes(prev.begin(), prev.end(), members.begin(), members.end()))
                throw LoopError("internal error: filtration failed to descend on " +
                                loop.loop_name());
        }
        f.terms.push_back(std::move(members));
        f.exact.push_back(exact);
    }
    for (int i = 1; i <= f.depth(); ++i)
        if (f.term(i).size() == 1) {
            f.stabilized_at = i;
            break;
        }
    for (bool e : f.exact)
        if (!e) f.lower_bound = true;
    return f;
}

} // namespace

Filtration lower_central_series(const CayleyLoop& loop, const SeriesOptions& opts) {
    return run_series(loop, SeriesKind::Gamma, opts);
}

Filtration ca_filtration(const CayleyLoop& loop, const SeriesOptions& opts) {
    return run_series(loop, SeriesKind::CA, opts);
}

Filtration naive_filtration(const CayleyLoop& loop, const SeriesOptions& opts) {
    return run_series(loop, SeriesKind::Naive, opts);
}

std::vector<int> ca_generator_set(const CayleyLoop& loop,
                                  const std::vector<std::vector<int>>& terms, int i,
                                  bool extended) {
    DeviationEvaluator ev(loop);
    GeneratorScan scan(ev, UINT64_MAX, 0, 0);
    scan_term_generators(scan, terms, i, true, extended);
    return scan.values();
}

SeriesComparison compare_series(const CayleyLoop& loop, const SeriesOptions& opts) {
    SeriesComparison c;
    c.gamma = lower_central_series(loop, opts);
    c.ca = ca_filtration(loop, opts);
    c.naive = naive_filtration(loop, opts);
    c.gamma2_eq_ca2 = opts.depth < 2 || c.gamma.term(2) == c.ca.term(2);
    c.containments_ok = true;
    c.gamma_eq_ca = true;
    c.naive_eq_ca = true;
    for (int i = 1; i <= opts.depth; ++i) {
        const auto& g = c.gamma.term(i);
        const auto& a = c.ca.term(i);
        const auto& n = c.naive.term(i);
        if (!std::includes(a.begin(), a.end(), g.begin(), g.end())) c.containments_ok = false;
        if (!std::includes(a.begin(), a.end(), n.begin(), n.end())) c.containments_ok = false;
        if (g != a) c.gamma_eq_ca = false;
        if (n != a) c.naive_eq_ca = false;
    }
    return c;
}

namespace {

nlohmann::json chain_json(const Filtration& f) {
    nlohmann::json orders = nlohmann::json::array();
    nlohmann::json exact = nlohmann::json::array();
    for (int i = 1; i <= f.depth(); ++i) {
        orders.push_back(f.term(i).size());
        exact.push_back(static_cast<bool>(f.term_exact(i)));
    }
    nlohmann::json out{{"kind", series_kind_name(f.kind)},
                       {"orders", std::move(orders)},
                       {"exact", std::move(exact)},
                       {"stabilized_at", f.stabilized_at},
                       {"lower_bound", f.lower_bound}};
    if (f.loop.order() <= 16) {
        nlohmann::json members = nlohmann::json::array();
        for (int i = 1; i <= f.depth(); ++i) {
            nlohmann::json term = nlohmann::json::array();
            for (int v : f.term(i)) term.push_back(f.loop.name(v));
            members.push_back(std::move(term));
        }
        out["members"] = std::move(members);
    }
    return out;
}

} // namespace

nlohmann::json filtration_to_json(const Filtration& f) {
    nlohmann::json out = chain_json(f);
    out["loop"] = f.loop.loop_name();
    out["order"] = f.loop.order();
    out["depth"] = f.depth();
    return out;
}

nlohmann::json comparison_to_json(const SeriesComparison& c) {
    return nlohmann::json{{"loop", c.gamma.loop.loop_name()},
                          {"order", c.gamma.loop.order()},
                          {"depth", c.gamma.depth()},
                          {"gamma", chain_json(c.gamma)},
                          {"ca", chain_json(c.ca)},
                          {"naive", chain_json(c.naive)},
                          {"flags",
                           {{"gamma2_eq_ca2", c.gamma2_eq_ca2},
                            {"gamma_eq_ca", c.gamma_eq_ca},
                            {"naive_eq_ca", c.naive_eq_ca},
                            {"containments_ok", c.containments_ok},
                            {"lower_bound",
                             c.gamma.lower_bound || c.ca.lower_bound || c.naive.lower_bound}}}};
}

} // namespace loopforge
