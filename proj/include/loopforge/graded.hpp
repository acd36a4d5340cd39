#pragma once

// The associated graded abelian group of a filtration: components
// L_i/L_{i+1} with invariant factors, the induced bracket / associator /
// deviation operations, and the multilinearity and Akivis checks.

#include "loopforge/cayley.hpp"
#include "loopforge/series.hpp"
#include "loopforge/term.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace loopforge {

// Smith normal form over the integers. Returns the diagonal d_1 | d_2 | ...
// (nonnegative) and the generator transform W: if the columns of the input
// relation matrix correspond to generators g_j, the group decomposes as the
// direct sum of cyclic groups of orders d_i generated by h_i = sum_j W[i][j] g_j.
struct SmithResult {
    std::vector<long long> diagonal;
    std::vector<std::vector<long long>> generator_transform;
};

SmithResult smith_normal_form(std::vector<std::vector<long long>> rows, int cols);

// Invariant factors d_1 | d_2 | ... (all > 1) of a finite abelian group given
// as a Cayley table, via a Schreier relation presentation reduced to
// elementary divisors. Optionally reports one generating element per factor.
std::vector<long long> invariant_factors(const CayleyLoop& abelian,
                                         std::vector<int>* factor_generators = nullptr);

struct GradedComponent {
    int degree = 0;
    CayleyLoop quotient;                        // L_degree / L_{degree+1}; an abelian group
    std::vector<int> lift;                      // coset -> parent element (least name)
    std::vector<int> to_coset;                  // parent element -> coset or -1
    std::vector<std::vector<int>> coset_members; // coset -> parent elements
    std::vector<long long> invariant_factors;
    std::vector<int> factor_generators;         // coset index generating each factor

    int order() const { return quotient.order(); }
    int zero() const { return quotient.identity(); }
};

class GradedGroup {
public:
    const CayleyLoop& loop() const { return loop_; }
    int max_degree() const { return static_cast<int>(components_.size()); }
    bool has_component(int degree) const { return degree >= 1 && degree <= max_degree(); }
    const GradedComponent& component(int degree) const;
    const std::vector<GradedComponent>& components() const { return components_; }

    friend GradedGroup graded_group(const Filtration& f);

private:
    CayleyLoop loop_;
    std::vector<GradedComponent> components_;
};

// Components for 1 <= i < depth. Every quotient is scanned for
// commutativity and associativity; a non-abelian quotient aborts (it would
// mean the series computation is wrong). Throws on lower-bound terms.
GradedGroup graded_group(const Filtration& f);

struct GradedElement {
    int degree = 0;
    int coset = 0;
    bool operator==(const GradedElement&) const = default;
};

GradedElement graded_zero(const GradedGroup& g, int degree);
GradedElement graded_add(const GradedGroup& g, GradedElement x, GradedElement y);
GradedElement graded_neg(const GradedGroup& g, GradedElement x);
// class of [lift x, lift y] in degree p+q
GradedElement graded_bracket(const GradedGroup& g, GradedElement x, GradedElement y);
// class of (lift x, lift y, lift z) in degree p+q+r
GradedElement graded_associator(const GradedGroup& g, GradedElement x, GradedElement y,
                                GradedElement z);
// class of the evaluated deviation of the lifts, in degree sum(deg)
GradedElement graded_deviation(const GradedGroup& g, std::span<const GradedElement> xs,
                               const AlphaSequence& alphas);

struct CheckReport {
    std::uint64_t checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

void merge_into(CheckReport& dst, const CheckReport& src);

// Additivity in each slot plus representative independence. rep_cap bounds
// the representative combinations tried per class tuple (0 = exhaustive).
CheckReport check_bracket_bilinear(const GradedGroup& g, int p, int q, std::uint64_t rep_cap = 0);
CheckReport check_associator_trilinear(const GradedGroup& g, int p, int q, int r,
                                       std::uint64_t rep_cap = 0);
CheckReport check_deviation_multilinear(const GradedGroup& g, const AlphaSequence& alphas,
                                        std::span<const int> degrees, std::uint64_t rep_cap = 0,
                                        std::uint64_t tuple_cap = 0);

// [[a,b],c] + [[b,c],a] + [[c,a],b]
//   = (a,b,c)+(b,c,a)+(c,a,b)-(a,c,b)-(c,b,a)-(b,a,c) over all homogeneous
// triples of degrees (p,q,r).
CheckReport check_akivis(const GradedGroup& g, int p, int q, int r);

nlohmann::json graded_to_json(const GradedGroup& g, const CheckReport& bilinear,
                              const CheckReport& trilinear, const CheckReport& deviation,
                              const CheckReport& akivis);

} // namespace loopforge
