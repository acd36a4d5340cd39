#pragma once

// The Higman extension loop (L,B) over an ambient loop L: pairs (l, b) with
// b in the free abelian group on symbols f(l1,l2), l1 != 1 != l2, and g(x).
//   (l1,b1)(l2,b2)  = (l1 l2,  b1+b2+f(l1,l2))
//   (l1,b1)/(l2,b2) = (l1/l2,  b1-b2-f(l1/l2, l2))
//   (l2,b2)\(l1,b1) = (l2\l1,  b1-b2-f(l2, l2\l1))
// with f(l,1) = f(1,l) = 0; identity (1,0). The homomorphism
// delta: x -> (px, g(x)) detects elements outside [N,F]: a nonzero image
// certifies the element is not in the third term of the lower central
// series of the free loop.
//
// All coefficients and ambient-Z coordinates are exact arbitrary-precision
// integers (GMP).

#include "loopforge/cayley.hpp"
#include "loopforge/term.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json_fwd.hpp>

namespace loopforge {

// The integers under addition, as an ambient loop.
struct ZAmbient {
    using Element = mpz_class;
    Element mul(const Element& a, const Element& b) const { return a + b; }
    Element ldiv(const Element& a, const Element& b) const { return b - a; }
    Element rdiv(const Element& a, const Element& b) const { return a - b; }
    Element identity() const { return 0; }
    bool is_identity(const Element& a) const { return a == 0; }
    std::string name(const Element& a) const { return a.get_str(); }
};

// Any finite Cayley-table loop as an ambient loop.
struct TableAmbient {
    const CayleyLoop* loop = nullptr;
    using Element = int;
    Element mul(Element a, Element b) const { return loop->mul(a, b); }
    Element ldiv(Element a, Element b) const { return loop->ldiv(a, b); }
    Element rdiv(Element a, Element b) const { return loop->rdiv(a, b); }
    Element identity() const { return loop->identity(); }
    bool is_identity(Element a) const { return a == loop->identity(); }
    std::string name(Element a) const { return loop->name(a); }
};

template <class A>
concept AmbientLoop = LoopLike<A> && requires(const A& amb, typename A::Element e) {
    { amb.is_identity(e) } -> std::convertible_to<bool>;
    { amb.name(e) } -> std::convertible_to<std::string>;
};

// basis symbol: F(l1,l2) or G(generator name); F sorts before G
template <AmbientLoop A>
struct BasisSymbol {
    bool is_g = false;
    typename A::Element l1{}, l2{}; // F only
    std::string gen;                // G only

    static BasisSymbol f(typename A::Element a, typename A::Element b) {
        BasisSymbol s;
        s.l1 = std::move(a);
        s.l2 = std::move(b);
        return s;
    }
    static BasisSymbol g(std::string name) {
        BasisSymbol s;
        s.is_g = true;
        s.gen = std::move(name);
        return s;
    }

    friend bool operator<(const BasisSymbol& x, const BasisSymbol& y) {
        if (x.is_g != y.is_g) return !x.is_g;
        if (x.is_g) return x.gen < y.gen;
        if (x.l1 != y.l1) return x.l1 < y.l1;
        return x.l2 < y.l2;
    }
    friend bool operator==(const BasisSymbol& x, const BasisSymbol& y) {
        return !(x < y) && !(y < x);
    }
};

// element of the free abelian group B: sparse integer vector over symbols;
// zero coefficients are never stored
template <AmbientLoop A>
class AbVector {
public:
    using Symbol = BasisSymbol<A>;

    bool is_zero() const { return coeffs_.empty(); }
    mpz_class coeff(const Symbol& s) const {
        auto it = coeffs_.find(s);
        return it == coeffs_.end() ? mpz_class(0) : it->second;
    }
    void add(const Symbol& s, const mpz_class& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.emplace(s, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }
    AbVector& operator+=(const AbVector& o) {
        for (const auto& [s, c] : o.coeffs_) add(s, c);
        return *this;
    }
    AbVector& operator-=(const AbVector& o) {
        for (const auto& [s, c] : o.coeffs_) add(s, -c);
        return *this;
    }
    friend AbVector operator+(AbVector a, const AbVector& b) { return a += b; }
    friend AbVector operator-(AbVector a, const AbVector& b) { return a -= b; }
    bool operator==(const AbVector& o) const { return coeffs_ == o.coeffs_; }

    const std::map<Symbol, mpz_class>& terms() const { return coeffs_; }

private:
    std::map<Symbol, mpz_class> coeffs_;
};

template <AmbientLoop A>
struct HigmanElement {
    typename A::Element l{};
    AbVector<A> b;
    bool operator==(const HigmanElement& o) const { return l == o.l && b == o.b; }
};

template <AmbientLoop A>
class HigmanLoop {
public:
    using Element = HigmanElement<A>;

    explicit HigmanLoop(A ambient = {}) : ambient_(std::move(ambient)) {}

    const A& ambient() const { return ambient_; }

    Element identity() const { return Element{ambient_.identity(), {}}; }

    Element mul(const Element& u, const Element& v) const {
        Element r{ambient_.mul(u.l, v.l), u.b + v.b};
        add_f(r.b, u.l, v.l, 1);
        return r;
    }
    // u\v = (u.l\v.l, v.b - u.b - f(u.l, u.l\v.l))
    Element ldiv(const Element& u, const Element& v) const {
        Element r;
        r.l = ambient_.ldiv(u.l, v.l);
        r.b = v.b - u.b;
        add_f(r.b, u.l, r.l, -1);
        return r;
    }
    // u/v = (u.l/v.l, u.b - v.b - f(u.l/v.l, v.l))
    Element rdiv(const Element& u, const Element& v) const {
        Element r;
        r.l = ambient_.rdiv(u.l, v.l);
        r.b = u.b - v.b;
        add_f(r.b, r.l, v.l, -1);
        return r;
    }

    // delta x = (px, g(x))
    Element generator_image(const std::string& gen, typename A::Element px) const {
        Element r{std::move(px), {}};
        r.b.add(BasisSymbol<A>::g(gen), 1);
        return r;
    }

private:
    A ambient_;

    void add_f(AbVector<A>& b, const typename A::Element& l1, const typename A::Element& l2,
               int sign) const {
        if (ambient_.is_identity(l1) || ambient_.is_identity(l2)) return; // f(1,l)=f(l,1)=0
        b.add(BasisSymbol<A>::f(l1, l2), sign);
    }
};

// delta applied to a whole term: evaluate in (L,B) with x -> (p(x), g(x)).
template <AmbientLoop A>
HigmanElement<A> delta_eval(const Term& t, const std::map<std::string, typename A::Element>& p,
                            const HigmanLoop<A>& h) {
    std::map<std::string, HigmanElement<A>> env;
    for (const auto& [gen, px] : p) env.emplace(gen, h.generator_image(gen, px));
    return eval_term(t, env, h);
}

std::string ab_vector_to_string(const AbVector<ZAmbient>& b);

// delta of the witness deviation (y^m, y, ..., y) with n ones, over ambient
// Z with p(y) = 1, computed by the memoized recursion
//   D(m,0) = delta-associator(y^m, y, y),
//   D(m,n) = (D(m,n-1) D(1,n-1)) \ D(m+1,n-1).
HigmanElement<ZAmbient> delta_witness_deviation(int m, int n);

// delta y^m = (m, m g(y) + f(1,1) + f(2,1) + ... + f(m-1,1))
HigmanElement<ZAmbient> delta_power(int m);

struct WitnessReport {
    int m = 0, n = 0;
    mpz_class loop_part;
    mpz_class leading_p, leading_q; // the F symbol with the greatest first index
    mpz_class leading_coeff;
    mpz_class max_other_p; // greatest first index among the other F symbols; -1 if none
    mpz_class g_coeff;
    bool nonzero = false;
    std::string verdict; // "outside gamma3" | "degenerate"
    HigmanElement<ZAmbient> value;
};

// Certificate that the witness deviation lies outside gamma_3 of the free
// loop. The expected leading symbol is f(n+m+1, 1) with coefficient +1.
WitnessReport higman_witness(int m, int n);

nlohmann::json witness_to_json(const WitnessReport& r);

} // namespace loopforge
