#pragma once

// Syntactic free-loop elements: trees over named generators with product,
// left division and right division. Terms are never simplified; whether a
// term is trivial is decided only by evaluating it somewhere (a finite loop,
// or the Higman extension).

#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loopforge {

enum class TermOp { Mul, LDiv, RDiv };

char op_symbol(TermOp op); // '*', '\\', '/'

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable syntax tree node. Safe to share across threads.
class Term {
public:
    static TermPtr generator(std::string name);
    static TermPtr node(TermOp op, TermPtr lhs, TermPtr rhs);

    bool is_generator() const { return !left_; }
    const std::string& name() const { return name_; } // generator only
    TermOp op() const { return op_; }                 // node only
    const TermPtr& left() const { return left_; }
    const TermPtr& right() const { return right_; }

private:
    Term() = default;
    std::string name_;
    TermOp op_ = TermOp::Mul;
    TermPtr left_, right_;
};

TermPtr mul(TermPtr a, TermPtr b);
TermPtr ldiv(TermPtr a, TermPtr b); // a\b
TermPtr rdiv(TermPtr a, TermPtr b); // a/b

// [a,b] = (ba)\(ab)
TermPtr commutator(TermPtr a, TermPtr b);
// (a,b,c) = (a(bc))\((ab)c)
TermPtr associator(TermPtr a, TermPtr b, TermPtr c);
// y^m as the left-bracketed product (...((yy)y)...)y, m >= 1
TermPtr power(TermPtr y, int m);

bool structurally_equal(const Term& a, const Term& b);

// Canonical printing: nested operations fully parenthesized, outermost
// parentheses omitted. parse_term(print_term(t)) reproduces t.
std::string print_term(const Term& t);
std::string print_term(const TermPtr& t);

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Grammar (ASCII), mandatory parentheses for nested operations:
//   term  := IDENT | "(" term OP term ")"
//          | "com(" term "," term ")"
//          | "asc(" term "," term "," term ")"
//          | "dev(" term {"," term} ";" INT {"," INT} ")"
//   OP    := "*" | "\" | "/"
//   IDENT := [A-Za-z][A-Za-z0-9_]*
// Top-level parentheses may be omitted. com/asc/dev expand to raw trees.
TermPtr parse_term(std::string_view text);

// Index word (alpha_1,...,alpha_n) selecting one deviation of level n;
// 1 <= alpha_k <= k+2. Level 0 is the associator.
class AlphaSequence {
public:
    AlphaSequence() = default;
    explicit AlphaSequence(std::vector<int> alphas);

    int level() const { return static_cast<int>(alphas_.size()); }
    int alpha(int k) const { return alphas_[static_cast<std::size_t>(k)]; } // 0-based: alpha_{k+1}
    const std::vector<int>& values() const { return alphas_; }
    bool operator==(const AlphaSequence&) const = default;
    std::string to_string() const; // "(1,3,2)"; "()" for the associator

private:
    std::vector<int> alphas_;
};

// All (n+2)!/2 alpha sequences of level n, lexicographic.
std::vector<AlphaSequence> enumerate_alphas(int level);
std::uint64_t deviation_count(int level); // (n+2)!/2

// Level-n deviation term on n+3 arguments; defined inductively by
//   (a_1,...,a_{n+3})_{alpha} = (A(a_t) A(a_{t+1})) \ A(a_t a_{t+1}),
// t = alpha_n, where A(x) is the level-(n-1) deviation with x substituted at
// slot t and slot t+1 removed. Level 0 is the associator.
TermPtr deviation(std::span<const TermPtr> args, const AlphaSequence& alphas);

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class L>
concept LoopLike = requires(const L& loop, typename L::Element a, typename L::Element b) {
    { loop.mul(a, b) } -> std::convertible_to<typename L::Element>;
    { loop.ldiv(a, b) } -> std::convertible_to<typename L::Element>;
    { loop.rdiv(a, b) } -> std::convertible_to<typename L::Element>;
    { loop.identity() } -> std::convertible_to<typename L::Element>;
};

// Structural evaluation of a term in any loop. Throws EvalError on a
// generator missing from env.
template <LoopLike L>
typename L::Element eval_term(const Term& t,
                              const std::map<std::string, typename L::Element>& env,
                              const L& loop) {
    if (t.is_generator()) {
        auto it = env.find(t.name());
        if (it == env.end()) throw EvalError("unbound generator: " + t.name());
        return it->second;
    }
    auto lhs = eval_term(*t.left(), env, loop);
    auto rhs = eval_term(*t.right(), env, loop);
    switch (t.op()) {
    case TermOp::Mul: return loop.mul(lhs, rhs);
    case TermOp::LDiv: return loop.ldiv(lhs, rhs);
    case TermOp::RDiv: return loop.rdiv(lhs, rhs);
    }
    throw EvalError("corrupt term node");
}

// Deviation evaluated directly in a loop, without building the 3^n-sized
// term. args.size() must be alphas.level()+3.
template <LoopLike L>
typename L::Element eval_deviation(const L& loop, const AlphaSequence& alphas,
                                   std::span<const typename L::Element> args) {
    int n = alphas.level();
    if (static_cast<int>(args.size()) != n + 3)
        throw EvalError("deviation arity mismatch: level " + std::to_string(n) + " needs " +
                        std::to_string(n + 3) + " arguments");
    using El = typename L::Element;
    if (n == 0) {
        El rhs = loop.mul(loop.mul(args[0], args[1]), args[2]);
        El lhs = loop.mul(args[0], loop.mul(args[1], args[2]));
        return loop.ldiv(lhs, rhs);
    }
    int t = alphas.alpha(n - 1); // 1-based slot
    AlphaSequence prefix(std::vector<int>(alphas.values().begin(), alphas.values().end() - 1));
    auto sub = [&](El x) {
        std::vector<El> s(args.begin(), args.end());
        s[static_cast<std::size_t>(t - 1)] = x;
        s.erase(s.begin() + t);
        return eval_deviation(loop, prefix, std::span<const El>(s));
    };
    El u = sub(args[static_cast<std::size_t>(t - 1)]);
    El v = sub(args[static_cast<std::size_t>(t)]);
    El w = sub(loop.mul(args[static_cast<std::size_t>(t - 1)], args[static_cast<std::size_t>(t)]));
    return loop.ldiv(loop.mul(u, v), w);
}

} // namespace loopforge
