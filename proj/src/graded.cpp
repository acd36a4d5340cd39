#include "loopforge/graded.hpp"

#include <algorithm>
#include <cstdlib>

#include <nlohmann/json.hpp>

namespace loopforge {

SmithResult smith_normal_form(std::vector<std::vector<long long>> a, int cols) {
    int rows = static_cast<int>(a.size());
    for (auto& r : a)
        if (static_cast<int>(r.size()) != cols) throw LoopError("ragged relation matrix");
    // W tracks column operations: new generators h = W * g
    std::vector<std::vector<long long>> w(static_cast<std::size_t>(cols),
                                          std::vector<long long>(static_cast<std::size_t>(cols), 0));
    for (int i = 0; i < cols; ++i) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

    auto row_swap = [&](int i, int j) { std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]); };
    auto row_add = [&](int dst, int src, long long c) {
        for (int k = 0; k < cols; ++k)
            a[static_cast<std::size_t>(dst)][static_cast<std::size_t>(k)] +=
                c * a[static_cast<std::size_t>(src)][static_cast<std::size_t>(k)];
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < rows; ++r)
            std::swap(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)],
                      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]);
        std::swap(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(j)]);
    };
    // col_j += c * col_l  =>  W.row(l) -= c * W.row(j)
    auto col_add = [&](int j, int l, long long c) {
        for (int r = 0; r < rows; ++r)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] +=
                c * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(l)];
        for (int k = 0; k < cols; ++k)
            w[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] -=
                c * w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    };
    auto col_negate = [&](int j) {
        for (int r = 0; r < rows; ++r)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                -a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        for (int k = 0; k < cols; ++k)
            w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                -w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    };

    int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the remaining submatrix
            int pr = -1, pc = -1;
            long long best = 0;
            for (int r = t; r < rows; ++r)
                for (int c = t; c < cols; ++c) {
                    long long v = std::llabs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
                    if (v != 0 && (pr < 0 || v < best)) {
                        best = v;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr < 0) break; // submatrix zero
            if (pr != t) row_swap(pr, t);
            if (pc != t) col_swap(pc, t);
            if (a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] < 0) col_negate(t);
            long long d = a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
            bool reduced = true;
            for (int r = t + 1; r < rows; ++r) {
                long long q = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] / d;
                if (q != 0) row_add(r, t, -q);
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] != 0) reduced = false;
            }
            for (int c = t + 1; c < cols; ++c) {
                long long q = a[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] / d;
                if (q != 0) col_add(c, t, -q);
                if (a[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] != 0) reduced = false;
            }
            if (!reduced) continue; // smaller pivot now exists
            // pivot must divide everything that remains
            bool divides = true;
            for (int r = t + 1; r < rows && divides; ++r)
                for (int c = t + 1; c < cols; ++c)
                    if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] % d != 0) {
                        row_add(t, r, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }
    SmithResult res;
    for (int t = 0; t < steps; ++t)
        res.diagonal.push_back(a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
    res.generator_transform = std::move(w);
    return res;
}

std::vector<long long> invariant_factors(const CayleyLoop& abelian,
                                         std::vector<int>* factor_generators) {
    int n = abelian.order();
    if (factor_generators) factor_generators->clear();
    // greedy generating sequence
    std::vector<int> gens;
    std::vector<std::uint8_t> in_span(static_cast<std::size_t>(n), 0);
    in_span[static_cast<std::size_t>(abelian.identity())] = 1;
    for (int x = 0; x < n; ++x) {
        if (in_span[static_cast<std::size_t>(x)]) continue;
        gens.push_back(x);
        std::vector<int> span = subloop_closure(abelian, gens);
        for (int v : span) in_span[static_cast<std::size_t>(v)] = 1;
    }
    int k = static_cast<int>(gens.size());
    if (k == 0) return {};
    // Schreier relations from a breadth-first spanning tree of the Cayley
    // graph on the generators
    std::vector<std::vector<long long>> rep(static_cast<std::size_t>(n));
    std::vector<int> order_bfs;
    rep[static_cast<std::size_t>(abelian.identity())] =
        std::vector<long long>(static_cast<std::size_t>(k), 0);
    order_bfs.push_back(abelian.identity());
    for (std::size_t head = 0; head < order_bfs.size(); ++head) {
        int x = order_bfs[head];
        for (int i = 0; i < k; ++i) {
            int y = abelian.mul(x, gens[static_cast<std::size_t>(i)]);
            if (rep[static_cast<std::size_t>(y)].empty() && y != abelian.identity()) {
                rep[static_cast<std::size_t>(y)] = rep[static_cast<std::size_t>(x)];
                ++rep[static_cast<std::size_t>(y)][static_cast<std::size_t>(i)];
                order_bfs.push_back(y);
            }
        }
    }
    std::vector<std::vector<long long>> rels;
    for (int x : order_bfs)
        for (int i = 0; i < k; ++i) {
            int y = abelian.mul(x, gens[static_cast<std::size_t>(i)]);
            std::vector<long long> rel = rep[static_cast<std::size_t>(x)];
            ++rel[static_cast<std::size_t>(i)];
            const auto& ry = rep[static_cast<std::size_t>(y)];
            for (int j = 0; j < k; ++j)
                rel[static_cast<std::size_t>(j)] -= ry[static_cast<std::size_t>(j)];
            if (std::any_of(rel.begin(), rel.end(), [](long long v) { return v != 0; }))
                rels.push_back(std::move(rel));
        }
    SmithResult snf = smith_normal_form(std::move(rels), k);
    std::vector<long long> factors;
    long long product = 1;
    for (int i = 0; i < k; ++i) {
        long long d = i < static_cast<int>(snf.diagonal.size()) ? snf.diagonal[static_cast<std::size_t>(i)] : 0;
        if (d == 0)
            throw LoopError("relation matrix not of full rank for a finite group");
        if (d == 1) continue;
        factors.push_back(d);
        product *= d;
        if (factor_generators) {
            // h_i = sum_j W[i][j] g_j evaluated in the group
            int h = abelian.identity();
            for (int j = 0; j < k; ++j) {
                long long c = snf.generator_transform[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                long long e = ((c % d) + d) % d; // exponents mod the factor order
                for (long long s = 0; s < e; ++s) h = abelian.mul(h, gens[static_cast<std::size_t>(j)]);
            }
            factor_generators->push_back(h);
        }
    }
    if (product != n)
        throw LoopError("invariant factor product " + std::to_string(product) +
                        " does not match group order " + std::to_string(n));
    return factors;
}

GradedGroup graded_group(const Filtration& f) {
    GradedGroup g;
    g.loop_ = f.loop;
    for (int i = 1; i + 1 <= f.depth(); ++i) {
        if (!f.term_exact(i) || !f.term_exact(i + 1))
            throw LoopError("graded components need exact filtration terms; term " +
                            std::to_string(i) + " or " + std::to_string(i + 1) +
                            " of " + f.loop.loop_name() +
                            " is a lower bound (raise --max-evals)");
        Subloop sub = restrict_to_subloop(g.loop_, f.term(i));
        std::vector<int> inner;
        for (int v : f.term(i + 1)) {
            int s = sub.from_parent[static_cast<std::size_t>(v)];
            if (s < 0) throw LoopError("filtration term " + std::to_string(i + 1) +
                                       " not contained in term " + std::to_string(i));
            inner.push_back(s);
        }
        NormalSubloop N(sub.loop, inner);
        Quotient q = quotient(sub.loop, N);
        AxiomReport ax = check_axioms(q.loop);
        if (!ax.commutative || !ax.associative)
            throw LoopError("quotient L_" + std::to_string(i) + "/L_" + std::to_string(i + 1) +
                            " of " + f.loop.loop_name() +
                            " is not an abelian group: series computation is broken");
        GradedComponent comp;
        comp.degree = i;
        comp.to_coset.assign(static_cast<std::size_t>(g.loop_.order()), -1);
        comp.coset_members.assign(static_cast<std::size_t>(q.loop.order()), {});
        for (int s = 0; s < sub.loop.order(); ++s) {
            int parent = sub.to_parent[static_cast<std::size_t>(s)];
            int coset = q.to_coset[static_cast<std::size_t>(s)];
            comp.to_coset[static_cast<std::size_t>(parent)] = coset;
            comp.coset_members[static_cast<std::size_t>(coset)].push_back(parent);
        }
        comp.lift.resize(static_cast<std::size_t>(q.loop.order()));
        for (int c = 0; c < q.loop.order(); ++c)
            comp.lift[static_cast<std::size_t>(c)] =
                sub.to_parent[static_cast<std::size_t>(q.lift[static_cast<std::size_t>(c)])];
        comp.invariant_factors = invariant_factors(q.loop, &comp.factor_generators);
        comp.quotient = std::move(q.loop);
        g.components_.push_back(std::move(comp));
    }
    return g;
}

const GradedComponent& GradedGroup::component(int degree) const {
    if (!has_component(degree))
        throw LoopError("missing graded component of degree " + std::to_string(degree) +
                        " (filtration depth too small)");
    return components_[static_cast<std::size_t>(degree - 1)];
}

GradedElement graded_zero(const GradedGroup& g, int degree) {
    return {degree, g.component(degree).zero()};
}

GradedElement graded_add(const GradedGroup& g, GradedElement x, GradedElement y) {
    if (x.degree != y.degree) throw LoopError("graded addition needs equal degrees");
    const auto& comp = g.component(x.degree);
    return {x.degree, comp.quotient.mul(x.coset, y.coset)};
}

GradedElement graded_neg(const GradedGroup& g, GradedElement x) {
    const auto& comp = g.component(x.degree);
    return {x.degree, comp.quotient.ldiv(x.coset, comp.quotient.identity())};
}

namespace {

GradedElement classify(const GradedGroup& g, int degree, int parent_element) {
    const auto& comp = g.component(degree);
    int c = comp.to_coset[static_cast<std::size_t>(parent_element)];
    if (c < 0)
        throw LoopError("graded operation produced an element outside L_" +
                        std::to_string(degree) + "; series computation is broken");
    return {degree, c};
}

} // namespace

GradedElement graded_bracket(const GradedGroup& g, GradedElement x, GradedElement y) {
    int a = g.component(x.degree).lift[static_cast<std::size_t>(x.coset)];
    int b = g.component(y.degree).lift[static_cast<std::size_t>(y.coset)];
    return classify(g, x.degree + y.degree, g.loop().com(a, b));
}

GradedElement graded_associator(const GradedGroup& g, GradedElement x, GradedElement y,
                                GradedElement z) {
    int a = g.component(x.degree).lift[static_cast<std::size_t>(x.coset)];
    int b = g.component(y.degree).lift[static_cast<std::size_t>(y.coset)];
    int c = g.component(z.degree).lift[static_cast<std::size_t>(z.coset)];
    return classify(g, x.degree + y.degree + z.degree, g.loop().assoc(a, b, c));
}

GradedElement graded_deviation(const GradedGroup& g, std::span<const GradedElement> xs,
                               const AlphaSequence& alphas) {
    if (static_cast<int>(xs.size()) != alphas.level() + 3)
        throw LoopError("graded deviation arity mismatch");
    std::vector<int> args;
    int degree = 0;
    for (const auto& x : xs) {
        args.push_back(g.component(x.degree).lift[static_cast<std::size_t>(x.coset)]);
        degree += x.degree;
    }
    int value = eval_deviation(g.loop(), alphas, std::span<const int>(args));
    return classify(g, degree, value);
}

void merge_into(CheckReport& dst, const CheckReport& src) {
    dst.checked += src.checked;
    dst.violations.insert(dst.violations.end(), src.violations.begin(), src.violations.end());
}

namespace {

// iterate over class tuples of the given degrees; f gets the tuple
template <class F>
void for_each_class_tuple(const GradedGroup& g, std::span<const int> degrees, F&& f) {
    std::vector<GradedElement> cur(degrees.size());
    std::vector<int> sizes(degrees.size());
    for (std::size_t k = 0; k < degrees.size(); ++k)
        sizes[k] = g.component(degrees[k]).order();
    std::uint64_t total = 1;
    for (int s : sizes) total *= static_cast<std::uint64_t>(s);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        for (std::size_t k = degrees.size(); k-- > 0;) {
            cur[k] = {degrees[k], static_cast<int>(rest % static_cast<std::uint64_t>(sizes[k]))};
            rest /= static_cast<std::uint64_t>(sizes[k]);
        }
        f(std::span<const GradedElement>(cur));
    }
}

std::string describe(const GradedGroup& g, std::span<const GradedElement> xs) {
    std::string s = "(";
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) s += ",";
        s += g.component(xs[k].degree).quotient.name(xs[k].coset) + "@" +
             std::to_string(xs[k].degree);
    }
    return s + ")";
}

// representative independence for an n-ary induced operation
template <class Op>
CheckReport check_rep_independence(const GradedGroup& g, std::span<const int> degrees,
                                   std::uint64_t rep_cap, Op&& op) {
    CheckReport rep;
    for_each_class_tuple(g, degrees, [&](std::span<const GradedElement> xs) {
        GradedElement expected = op(xs, nullptr);
        // combinations of representatives, mixed radix over coset members
        std::uint64_t combos = 1;
        for (const auto& x : xs)
            combos *= g.component(x.degree)
                          .coset_members[static_cast<std::size_t>(x.coset)]
                          .size();
        std::uint64_t step = 1;
        if (rep_cap > 0 && combos > rep_cap) step = combos / rep_cap + 1;
        std::vector<int> reps(xs.size());
        for (std::uint64_t ci = 0; ci < combos; ci += step) {
            std::uint64_t rest = ci;
            for (std::size_t k = xs.size(); k-- > 0;) {
                const auto& members =
                    g.component(xs[k].degree).coset_members[static_cast<std::size_t>(xs[k].coset)];
                reps[k] = members[static_cast<std::size_t>(rest % members.size())];
                rest /= members.size();
            }
            GradedElement got = op(xs, &reps);
            ++rep.checked;
            if (!(got == expected))
                rep.violations.push_back("representative dependence at " + describe(g, xs));
        }
    });
    return rep;
}

} // namespace

CheckReport check_bracket_bilinear(const GradedGroup& g, int p, int q, std::uint64_t rep_cap) {
    CheckReport out;
    // additivity in the first slot
    int np = g.component(p).order(), nq = g.component(q).order();
    for (int x = 0; x < np; ++x)
        for (int x2 = 0; x2 < np; ++x2)
            for (int y = 0; y < nq; ++y) {
                GradedElement ex{p, x}, ex2{p, x2}, ey{q, y};
                GradedElement lhs = graded_bracket(g, graded_add(g, ex, ex2), ey);
                GradedElement rhs =
                    graded_add(g, graded_bracket(g, ex, ey), graded_bracket(g, ex2, ey));
                ++out.checked;
                if (!(lhs == rhs))
                    out.violations.push_back("bracket not additive in slot 1 at (" +
                                             std::to_string(x) + "," + std::to_string(x2) + ";" +
                                             std::to_string(y) + ") degrees (" + std::to_string(p) +
                                             "," + std::to_string(q) + ")");
            }
    // additivity in the second slot
    for (int x = 0; x < np; ++x)
        for (int y = 0; y < nq; ++y)
            for (int y2 = 0; y2 < nq; ++y2) {
                GradedElement ex{p, x}, ey{q, y}, ey2{q, y2};
                GradedElement lhs = graded_bracket(g, ex, graded_add(g, ey, ey2));
                GradedElement rhs =
                    graded_add(g, graded_bracket(g, ex, ey), graded_bracket(g, ex, ey2));
                ++out.checked;
                if (!(lhs == rhs))
                    out.violations.push_back("bracket not additive in slot 2 at degrees (" +
                                             std::to_string(p) + "," + std::to_string(q) + ")");
            }
    std::vector<int> degrees{p, q};
    CheckReport rep = check_rep_independence(
        g, degrees, rep_cap, [&](std::span<const GradedElement> xs, const std::vector<int>* reps) {
            if (!reps) return graded_bracket(g, xs[0], xs[1]);
            return classify(g, p + q, g.loop().com((*reps)[0], (*reps)[1]));
        });
    merge_into(out, rep);
    return out;
}

CheckReport check_associator_trilinear(const GradedGroup& g, int p, int q, int r,
                                       std::uint64_t rep_cap) {
    CheckReport out;
    std::vector<int> degrees{p, q, r};
    // additivity slot by slot
    for (int slot = 0; slot < 3; ++slot) {
        for_each_class_tuple(g, degrees, [&](std::span<const GradedElement> xs) {
            int d = degrees[static_cast<std::size_t>(slot)];
            for (int extra = 0; extra < g.component(d).order(); ++extra) {
                GradedElement add{d, extra};
                std::vector<GradedElement> bumped(xs.begin(), xs.end());
                bumped[static_cast<std::size_t>(slot)] =
                    graded_add(g, xs[static_cast<std::size_t>(slot)], add);
                GradedElement lhs = graded_associator(g, bumped[0], bumped[1], bumped[2]);
                std::vector<GradedElement> alt(xs.begin(), xs.end());
                alt[static_cast<std::size_t>(slot)] = add;
                GradedElement rhs = graded_add(g, graded_associator(g, xs[0], xs[1], xs[2]),
                                               graded_associator(g, alt[0], alt[1], alt[2]));
                ++out.checked;
                if (!(lhs == rhs))
                    out.violations.push_back("associator not additive in slot " +
                                             std::to_string(slot + 1) + " at " + describe(g, xs));
            }
        });
    }
    CheckReport rep = check_rep_independence(
        g, degrees, rep_cap, [&](std::span<const GradedElement> xs, const std::vector<int>* reps) {
            if (!reps) return graded_associator(g, xs[0], xs[1], xs[2]);
            return classify(g, p + q + r, g.loop().assoc((*reps)[0], (*reps)[1], (*reps)[2]));
        });
    merge_into(out, rep);
    return out;
}

CheckReport check_deviation_multilinear(const GradedGroup& g, const AlphaSequence& alphas,
                                        std::span<const int> degrees, std::uint64_t rep_cap,
                                        std::uint64_t tuple_cap) {
    int arity = alphas.level() + 3;
    if (static_cast<int>(degrees.size()) != arity)
        throw LoopError("deviation degree vector has wrong arity");
    CheckReport out;
    std::uint64_t seen = 0;
    for (int slot = 0; slot < arity; ++slot) {
        for_each_class_tuple(g, degrees, [&](std::span<const GradedElement> xs) {
            if (tuple_cap && seen >= tuple_cap * static_cast<std::uint64_t>(arity)) return;
            int d = degrees[static_cast<std::size_t>(slot)];
            for (int extra = 0; extra < g.component(d).order(); ++extra) {
                ++seen;
                GradedElement add{d, extra};
                std::vector<GradedElement> bumped(xs.begin(), xs.end());
                bumped[static_cast<std::size_t>(slot)] =
                    graded_add(g, xs[static_cast<std::size_t>(slot)], add);
                GradedElement lhs =
                    graded_deviation(g, std::span<const GradedElement>(bumped), alphas);
                std::vector<GradedElement> alt(xs.begin(), xs.end());
                alt[static_cast<std::size_t>(slot)] = add;
                GradedElement rhs =
                    graded_add(g, graded_deviation(g, xs, alphas),
                               graded_deviation(g, std::span<const GradedElement>(alt), alphas));
                ++out.checked;
                if (!(lhs == rhs))
                    out.violations.push_back("deviation " + alphas.to_string() +
                                             " not additive in slot " + std::to_string(slot + 1) +
                                             " at " + describe(g, xs));
            }
        });
    }
    CheckReport rep = check_rep_independence(
        g, degrees, rep_cap, [&](std::span<const GradedElement> xs, const std::vector<int>* reps) {
            if (!reps) return graded_deviation(g, xs, alphas);
            int total = 0;
            for (const auto& x : xs) total += x.degree;
            int value = eval_deviation(g.loop(), alphas, std::span<const int>(*reps));
            return classify(g, total, value);
        });
    merge_into(out, rep);
    return out;
}

CheckReport check_akivis(const GradedGroup& g, int p, int q, int r) {
    CheckReport out;
    std::vector<int> degrees{p, q, r};
    for_each_class_tuple(g, degrees, [&](std::span<const GradedElement> xs) {
        GradedElement a = xs[0], b = xs[1], c = xs[2];
        GradedElement lhs = graded_add(
            g,
            graded_add(g, graded_bracket(g, graded_bracket(g, a, b), c),
                       graded_bracket(g, graded_bracket(g, b, c), a)),
            graded_bracket(g, graded_bracket(g, c, a), b));
        GradedElement rhs = graded_add(
            g,
            graded_add(g,
                       graded_add(g, graded_associator(g, a, b, c), graded_associator(g, b, c, a)),
                       graded_associator(g, c, a, b)),
            graded_neg(g, graded_add(g,
                                     graded_add(g, graded_associator(g, a, c, b),
                                                graded_associator(g, c, b, a)),
                                     graded_associator(g, b, a, c))));
        ++out.checked;
        if (!(lhs == rhs))
            out.violations.push_back("Akivis identity fails at " + describe(g, xs));
    });
    return out;
}

nlohmann::json graded_to_json(const GradedGroup& g, const CheckReport& bilinear,
                              const CheckReport& trilinear, const CheckReport& deviation,
                              const CheckReport& akivis) {
    nlohmann::json degrees = nlohmann::json::array();
    for (const auto& comp : g.components()) {
        nlohmann::json factors = nlohmann::json::array();
        for (long long d : comp.invariant_factors) factors.push_back(d);
        nlohmann::json gens = nlohmann::json::array();
        for (int c : comp.factor_generators) gens.push_back(comp.quotient.name(c));
        degrees.push_back(nlohmann::json{{"degree", comp.degree},
                                         {"order", comp.order()},
                                         {"invariant_factors", std::move(factors)},
                                         {"factor_generators", std::move(gens)}});
    }
    auto block = [](const CheckReport& r) {
        return nlohmann::json{{"checked", r.checked}, {"violations", r.violations}};
    };
    return nlohmann::json{{"loop", g.loop().loop_name()},
                          {"degrees", std::move(degrees)},
                          {"checks",
                           {{"bilinear", block(bilinear)},
                            {"trilinear", block(trilinear)},
                            {"deviation_multilinear", block(deviation)},
                            {"akivis", block(akivis)}}}};
}

} // namespace loopforge
