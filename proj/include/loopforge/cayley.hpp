#pragma once

// Finite loops as Cayley tables: validation, subloop and normal-closure
// machinery, the [N,L] bracket, quotients and the centre.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace loopforge {

class LoopError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite loop given by its multiplication table. Rows and columns are
// permutations (quasigroup) and a two-sided identity exists; both are
// enforced at construction. Division tables are precomputed. Immutable.
class CayleyLoop {
public:
    using Element = int;

    CayleyLoop() = default; // empty placeholder; every loaded loop is validated

    static CayleyLoop from_table(std::string loop_name, std::vector<std::string> names,
                                 const std::vector<std::vector<int>>& table);

    int order() const { return order_; }
    int identity() const { return identity_; }
    const std::string& loop_name() const { return loop_name_; }

    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    // a\b: the unique x with a*x = b
    int ldiv(int a, int b) const { return ldiv_[static_cast<std::size_t>(a) * order_ + b]; }
    // a/b: the unique x with x*b = a
    int rdiv(int a, int b) const { return rdiv_[static_cast<std::size_t>(a) * order_ + b]; }

    // [a,b] = (ba)\(ab)
    int com(int a, int b) const { return ldiv(mul(b, a), mul(a, b)); }
    // (a,b,c) = (a(bc))\((ab)c)
    int assoc(int a, int b, int c) const { return ldiv(mul(a, mul(b, c)), mul(mul(a, b), c)); }

    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }
    // -1 when absent
    int index_of(std::string_view element_name) const;

private:
    std::string loop_name_;
    int order_ = 0;
    int identity_ = 0;
    std::vector<std::string> names_;
    std::vector<int> table_, ldiv_, rdiv_;
};

struct AxiomReport {
    bool quasigroup = false;
    bool identity = false;
    bool associative = false;
    bool commutative = false;
    bool moufang = false; // left Moufang identity x(y(xz)) = ((xy)x)z
};

AxiomReport check_axioms(const CayleyLoop& loop);
nlohmann::json axiom_report_to_json(const CayleyLoop& loop, const AxiomReport& report);

// JSON: {"name": str, "elements": [str...], "table": [[int...]...]},
// table[i][j] = index of elements[i]*elements[j].
// Text: first line n, then n rows of n indices.
CayleyLoop load_loop(const std::filesystem::path& path);
CayleyLoop load_loop_json(const nlohmann::json& doc);
CayleyLoop load_loop_text(std::istream& in);
nlohmann::json loop_to_json(const CayleyLoop& loop);

// Least subset containing seed and the identity, closed under product and
// both divisions. Sorted.
std::vector<int> subloop_closure(const CayleyLoop& loop, std::span<const int> seed);

bool is_subloop(const CayleyLoop& loop, std::span<const int> members);
// Subloop invariant under the inner mapping generators
//   T(x):    a -> x\(ax)
//   L(x,y):  a -> (xy)\(x(ya))
//   R(x,y):  a -> ((ax)y)/(xy)
// (Bruck: these generate the full inner mapping group, so for a finite loop
// closure under them is exactly normality.)
bool is_normal(const CayleyLoop& loop, std::span<const int> members);

// Element subset of a parent loop certified normal at construction.
class NormalSubloop {
public:
    NormalSubloop(const CayleyLoop& parent, std::vector<int> members);

    const CayleyLoop& parent() const { return *parent_; }
    const std::vector<int>& members() const { return members_; } // sorted
    int order() const { return static_cast<int>(members_.size()); }
    bool contains(int element) const { return in_[static_cast<std::size_t>(element)]; }
    bool is_trivial() const { return members_.size() == 1; }
    bool is_whole_loop() const { return static_cast<int>(members_.size()) == parent_->order(); }
    bool operator==(const NormalSubloop& other) const { return members_ == other.members_; }

private:
    const CayleyLoop* parent_;
    std::vector<int> members_;
    std::vector<std::uint8_t> in_;
};

// Least normal subloop containing seed: saturates under products, divisions
// and the inner mapping generators.
NormalSubloop normal_closure(const CayleyLoop& loop, std::span<const int> seed);

// [N,L]: the smallest normal subloop M with N/M central in L/M. Computed in
// one pass as the normal closure of
//   { [n,x] : n in N, x in L } u { (n,x,y), (x,n,y), (x,y,n) : n in N, x,y in L }.
// One pass is exact: the quotient by this closure centralizes N (all the
// generators die), and conversely any normal M with N/M central must contain
// every generator, hence their normal closure.
NormalSubloop bracket_nl(const NormalSubloop& N, const CayleyLoop& L);

// Quotient loop on the cosets of a normal subloop, with projection and a
// deterministic lift (least element name per coset).
struct Quotient {
    CayleyLoop loop;
    std::vector<int> to_coset; // parent element -> coset index
    std::vector<int> lift;     // coset index -> representative parent element
};

Quotient quotient(const CayleyLoop& loop, const NormalSubloop& N);

// z commuting with every x and associating in all three slots with all x,y.
std::vector<int> centre(const CayleyLoop& loop);

// The table restricted to a subloop, re-indexed 0..k-1.
struct Subloop {
    CayleyLoop loop;
    std::vector<int> to_parent;   // sub index -> parent element
    std::vector<int> from_parent; // parent element -> sub index or -1
};

Subloop restrict_to_subloop(const CayleyLoop& loop, std::span<const int> members);

} // namespace loopforge
