#include "loopforge/term.hpp"

#include <cctype>
#include <sstream>

namespace loopforge {

char op_symbol(TermOp op) {
    switch (op) {
    case TermOp::Mul: return '*';
    case TermOp::LDiv: return '\\';
    case TermOp::RDiv: return '/';
    }
    return '?';
}

TermPtr Term::generator(std::string name) {
    if (name.empty()) throw std::invalid_argument("generator name must be non-empty");
    auto t = std::shared_ptr<Term>(new Term());
    t->name_ = std::move(name);
    return t;
}

TermPtr Term::node(TermOp op, TermPtr lhs, TermPtr rhs) {
    if (!lhs || !rhs) throw std::invalid_argument("term node with null child");
    auto t = std::shared_ptr<Term>(new Term());
    t->op_ = op;
    t->left_ = std::move(lhs);
    t->right_ = std::move(rhs);
    return t;
}

TermPtr mul(TermPtr a, TermPtr b) { return Term::node(TermOp::Mul, std::move(a), std::move(b)); }
TermPtr ldiv(TermPtr a, TermPtr b) { return Term::node(TermOp::LDiv, std::move(a), std::move(b)); }
TermPtr rdiv(TermPtr a, TermPtr b) { return Term::node(TermOp::RDiv, std::move(a), std::move(b)); }

TermPtr commutator(TermPtr a, TermPtr b) {
    return ldiv(mul(b, a), mul(a, b));
}

TermPtr associator(TermPtr a, TermPtr b, TermPtr c) {
    return ldiv(mul(a, mul(b, c)), mul(mul(a, b), c));
}

TermPtr power(TermPtr y, int m) {
    if (m < 1) throw std::invalid_argument("power exponent must be >= 1");
    TermPtr r = y;
    for (int i = 1; i < m; ++i) r = mul(r, y);
    return r;
}

bool structurally_equal(const Term& a, const Term& b) {
    if (a.is_generator() != b.is_generator()) return false;
    if (a.is_generator()) return a.name() == b.name();
    return a.op() == b.op() && structurally_equal(*a.left(), *b.left()) &&
           structurally_equal(*a.right(), *b.right());
}

namespace {

void print_sub(const Term& t, std::string& out) {
    if (t.is_generator()) {
        out += t.name();
        return;
    }
    out += '(';
    print_sub(*t.left(), out);
    out += op_symbol(t.op());
    print_sub(*t.right(), out);
    out += ')';
}

} // namespace

std::string print_term(const Term& t) {
    std::string out;
    if (t.is_generator()) {
        out = t.name();
    } else {
        print_sub(*t.left(), out);
        out += op_symbol(t.op());
        print_sub(*t.right(), out);
    }
    return out;
}

std::string print_term(const TermPtr& t) {
    if (!t) throw std::invalid_argument("null term");
    return print_term(*t);
}

ParseError::ParseError(std::string message, std::size_t position)
    : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
      position_(position) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    TermPtr parse_toplevel() {
        TermPtr first = parse_primary();
        skip_ws();
        if (at_end()) return first;
        // top-level parentheses may be omitted around one binary operation
        TermOp op = expect_op();
        TermPtr second = parse_primary();
        skip_ws();
        if (!at_end())
            fail("trailing input after top-level operation; nested operations need parentheses");
        return Term::node(op, std::move(first), std::move(second));
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (!at_end() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected ") + what);
    }

    bool is_op_char(char c) const { return c == '*' || c == '\\' || c == '/'; }

    TermOp expect_op() {
        skip_ws();
        if (at_end()) fail("expected operator '*', '\\' or '/'");
        char c = peek();
        if (!is_op_char(c)) {
            if (std::ispunct(static_cast<unsigned char>(c)))
                fail(std::string("unknown operator '") + c + "'");
            fail("expected operator '*', '\\' or '/'");
        }
        ++pos_;
        switch (c) {
        case '*': return TermOp::Mul;
        case '\\': return TermOp::LDiv;
        default: return TermOp::RDiv;
        }
    }

    std::string parse_ident() {
        skip_ws();
        if (at_end() || !std::isalpha(static_cast<unsigned char>(peek())))
            fail("expected identifier");
        std::size_t start = pos_;
        ++pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    int parse_int() {
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected integer");
        long value = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + (peek() - '0');
            if (value > 1'000'000) fail("integer out of range");
            ++pos_;
        }
        return static_cast<int>(value);
    }

    bool ident_is_call() {
        // an IDENT immediately followed by '(' is a builder call
        std::size_t save = pos_;
        skip_ws();
        bool call = !at_end() && peek() == '(';
        pos_ = save;
        return call;
    }

    TermPtr parse_primary() {
        skip_ws();
        if (at_end()) fail("expected term");
        if (peek() == '(') {
            ++pos_;
            TermPtr lhs = parse_primary();
            TermOp op = expect_op();
            TermPtr rhs = parse_primary();
            expect(')', "')'");
            return Term::node(op, std::move(lhs), std::move(rhs));
        }
        std::string ident = parse_ident();
        if ((ident == "com" || ident == "asc" || ident == "dev") && ident_is_call()) {
            expect('(', "'('");
            if (ident == "com") {
                TermPtr a = parse_primary();
                expect(',', "','");
                TermPtr b = parse_primary();
                expect(')', "')'");
                return commutator(std::move(a), std::move(b));
            }
            if (ident == "asc") {
                TermPtr a = parse_primary();
                expect(',', "','");
                TermPtr b = parse_primary();
                expect(',', "','");
                TermPtr c = parse_primary();
                expect(')', "')'");
                return associator(std::move(a), std::move(b), std::move(c));
            }
            return parse_dev_call();
        }
        return Term::generator(std::move(ident));
    }

    TermPtr parse_dev_call() {
        std::vector<TermPtr> args;
        args.push_back(parse_primary());
        while (accept(',')) args.push_back(parse_primary());
        expect(';', "';'");
        std::size_t alpha_pos = pos_;
        std::vector<int> alphas;
        alphas.push_back(parse_int());
        while (accept(',')) alphas.push_back(parse_int());
        expect(')', "')'");
        if (args.size() != alphas.size() + 3)
            throw ParseError("dev(...) needs exactly " + std::to_string(alphas.size() + 3) +
                                 " terms for " + std::to_string(alphas.size()) + " indices, got " +
                                 std::to_string(args.size()),
                             alpha_pos);
        try {
            AlphaSequence seq(alphas);
            return deviation(std::span<const TermPtr>(args), seq);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), alpha_pos);
        }
    }
};

} // namespace

TermPtr parse_term(std::string_view text) {
    Parser p(text);
    return p.parse_toplevel();
}

AlphaSequence::AlphaSequence(std::vector<int> alphas) : alphas_(std::move(alphas)) {
    for (std::size_t k = 0; k < alphas_.size(); ++k) {
        int a = alphas_[k];
        int hi = static_cast<int>(k) + 3; // alpha_{k+1} <= (k+1)+2
        if (a < 1 || a > hi)
            throw std::invalid_argument("alpha_" + std::to_string(k + 1) + " = " +
                                        std::to_string(a) + " out of range [1," +
                                        std::to_string(hi) + "]");
    }
}

std::string AlphaSequence::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < alphas_.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(alphas_[k]);
    }
    s += ')';
    return s;
}

std::uint64_t deviation_count(int level) {
    if (level < 0) throw std::invalid_argument("deviation level must be >= 0");
    std::uint64_t count = 1;
    for (int k = 1; k <= level; ++k) count *= static_cast<std::uint64_t>(k + 2);
    return count; // 3*4*...*(n+2) = (n+2)!/2
}

std::vector<AlphaSequence> enumerate_alphas(int level) {
    if (level < 0) throw std::invalid_argument("deviation level must be >= 0");
    std::vector<AlphaSequence> out;
    out.reserve(deviation_count(level));
    std::vector<int> cur(static_cast<std::size_t>(level), 1);
    while (true) {
        out.emplace_back(cur);
        int k = level - 1;
        while (k >= 0 && cur[static_cast<std::size_t>(k)] == k + 3) {
            cur[static_cast<std::size_t>(k)] = 1;
            --k;
        }
        if (k < 0) break;
        ++cur[static_cast<std::size_t>(k)];
    }
    return out;
}

TermPtr deviation(std::span<const TermPtr> args, const AlphaSequence& alphas) {
    int n = alphas.level();
    if (static_cast<int>(args.size()) != n + 3)
        throw std::invalid_argument("deviation of level " + std::to_string(n) + " needs " +
                                    std::to_string(n + 3) + " arguments, got " +
                                    std::to_string(args.size()));
    if (n == 0) return associator(args[0], args[1], args[2]);
    int t = alphas.alpha(n - 1);
    AlphaSequence prefix(std::vector<int>(alphas.values().begin(), alphas.values().end() - 1));
    auto sub = [&](TermPtr x) {
        std::vector<TermPtr> s(args.begin(), args.end());
        s[static_cast<std::size_t>(t - 1)] = std::move(x);
        s.erase(s.begin() + t);
        return deviation(std::span<const TermPtr>(s), prefix);
    };
    TermPtr u = sub(args[static_cast<std::size_t>(t - 1)]);
    TermPtr v = sub(args[static_cast<std::size_t>(t)]);
    TermPtr w = sub(mul(args[static_cast<std::size_t>(t - 1)], args[static_cast<std::size_t>(t)]));
    return ldiv(mul(std::move(u), std::move(v)), std::move(w));
}

} // namespace loopforge
