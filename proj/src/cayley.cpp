#include "loopforge/cayley.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace loopforge {

CayleyLoop CayleyLoop::from_table(std::string loop_name, std::vector<std::string> names,
                                  const std::vector<std::vector<int>>& table) {
    int n = static_cast<int>(table.size());
    if (n < 1) throw LoopError("empty table");
    if (static_cast<int>(names.size()) != n)
        throw LoopError("expected " + std::to_string(n) + " element names, got " +
                        std::to_string(names.size()));
    {
        std::set<std::string> seen;
        for (const auto& nm : names) {
            if (nm.empty()) throw LoopError("empty element name");
            if (!seen.insert(nm).second) throw LoopError("duplicate element name '" + nm + "'");
        }
    }
    CayleyLoop loop;
    loop.loop_name_ = std::move(loop_name);
    loop.order_ = n;
    loop.names_ = std::move(names);
    loop.table_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[static_cast<std::size_t>(i)].size()) != n)
            throw LoopError("ragged table: row " + std::to_string(i) + " has " +
                            std::to_string(table[static_cast<std::size_t>(i)].size()) +
                            " entries, expected " + std::to_string(n));
        for (int j = 0; j < n; ++j) {
            int v = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (v < 0 || v >= n)
                throw LoopError("table entry out of range at (" + std::to_string(i) + "," +
                                std::to_string(j) + "): " + std::to_string(v));
            loop.table_[static_cast<std::size_t>(i) * n + j] = v;
        }
    }
    // quasigroup: every row and column a permutation; fill division tables
    loop.ldiv_.assign(static_cast<std::size_t>(n) * n, -1);
    loop.rdiv_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a) {
        for (int x = 0; x < n; ++x) {
            int b = loop.table_[static_cast<std::size_t>(a) * n + x];
            if (loop.ldiv_[static_cast<std::size_t>(a) * n + b] != -1)
                throw LoopError("not a quasigroup: row " + std::to_string(a) +
                                " repeats value " + std::to_string(b));
            loop.ldiv_[static_cast<std::size_t>(a) * n + b] = x; // a*x = b
        }
    }
    for (int b = 0; b < n; ++b) {
        for (int x = 0; x < n; ++x) {
            int a = loop.table_[static_cast<std::size_t>(x) * n + b];
            if (loop.rdiv_[static_cast<std::size_t>(a) * n + b] != -1)
                throw LoopError("not a quasigroup: column " + std::to_string(b) +
                                " repeats value " + std::to_string(a));
            loop.rdiv_[static_cast<std::size_t>(a) * n + b] = x; // x*b = a
        }
    }
    // detect the (necessarily unique) two-sided identity
    loop.identity_ = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            ok = loop.table_[static_cast<std::size_t>(e) * n + j] == j &&
                 loop.table_[static_cast<std::size_t>(j) * n + e] == j;
        if (ok) {
            loop.identity_ = e;
            break;
        }
    }
    if (loop.identity_ < 0) throw LoopError("no identity element");
    return loop;
}

int CayleyLoop::index_of(std::string_view element_name) const {
    for (int i = 0; i < order_; ++i)
        if (names_[static_cast<std::size_t>(i)] == element_name) return i;
    return -1;
}

AxiomReport check_axioms(const CayleyLoop& loop) {
    int n = loop.order();
    AxiomReport r;
    r.quasigroup = true; // enforced at construction
    r.identity = true;
    r.associative = true;
    r.commutative = true;
    r.moufang = true;
    for (int a = 0; a < n && r.commutative; ++a)
        for (int b = 0; b < n; ++b)
            if (loop.mul(a, b) != loop.mul(b, a)) {
                r.commutative = false;
                break;
            }
    for (int a = 0; a < n && r.associative; ++a)
        for (int b = 0; b < n && r.associative; ++b)
            for (int c = 0; c < n; ++c)
                if (loop.mul(a, loop.mul(b, c)) != loop.mul(loop.mul(a, b), c)) {
                    r.associative = false;
                    break;
                }
    for (int x = 0; x < n && r.moufang; ++x)
        for (int y = 0; y < n && r.moufang; ++y)
            for (int z = 0; z < n; ++z)
                if (loop.mul(x, loop.mul(y, loop.mul(x, z))) !=
                    loop.mul(loop.mul(loop.mul(x, y), x), z)) {
                    r.moufang = false;
                    break;
                }
    return r;
}

nlohmann::json axiom_report_to_json(const CayleyLoop& loop, const AxiomReport& report) {
    return nlohmann::json{{"name", loop.loop_name()},
                          {"order", loop.order()},
                          {"identity", loop.name(loop.identity())},
                          {"quasigroup", report.quasigroup},
                          {"has_identity", report.identity},
                          {"associative", report.associative},
                          {"commutative", report.commutative},
                          {"moufang", report.moufang}};
}

CayleyLoop load_loop_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw LoopError("loop document must be a JSON object");
    std::string name = doc.value("name", std::string("loop"));
    if (!doc.contains("table")) throw LoopError("loop document missing \"table\"");
    auto table = doc.at("table").get<std::vector<std::vector<int>>>();
    std::vector<std::string> names;
    if (doc.contains("elements")) {
        names = doc.at("elements").get<std::vector<std::string>>();
    } else {
        for (std::size_t i = 0; i < table.size(); ++i) names.push_back(std::to_string(i));
    }
    return CayleyLoop::from_table(std::move(name), std::move(names), table);
}

CayleyLoop load_loop_text(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n < 1) throw LoopError("text table must start with the order n >= 1");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(in >> table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
                throw LoopError("text table truncated at row " + std::to_string(i));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return CayleyLoop::from_table("loop", std::move(names), table);
}

CayleyLoop load_loop(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoopError("cannot open " + path.string());
    // sniff: JSON documents start with '{'
    int c = in.peek();
    while (c != EOF && std::isspace(c)) {
        in.get();
        c = in.peek();
    }
    if (c == '{') {
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw LoopError("malformed JSON in " + path.string() + ": " + e.what());
        }
        return load_loop_json(doc);
    }
    return load_loop_text(in);
}

nlohmann::json loop_to_json(const CayleyLoop& loop) {
    int n = loop.order();
    nlohmann::json table = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < n; ++j) row.push_back(loop.mul(i, j));
        table.push_back(std::move(row));
    }
    return nlohmann::json{
        {"name", loop.loop_name()}, {"elements", loop.names()}, {"table", std::move(table)}};
}

namespace {

// worklist saturation shared by subloop_closure / normal_closure
std::vector<int> saturate(const CayleyLoop& loop, std::span<const int> seed, bool inner_maps) {
    int n = loop.order();
    std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
    std::vector<int> members, work;
    auto push = [&](int v) {
        if (!in[static_cast<std::size_t>(v)]) {
            in[static_cast<std::size_t>(v)] = 1;
            members.push_back(v);
            work.push_back(v);
        }
    };
    push(loop.identity());
    for (int s : seed) {
        if (s < 0 || s >= n) throw LoopError("seed element out of range");
        push(s);
    }
    while (!work.empty()) {
        int u = work.back();
        work.pop_back();
        // close under product and both divisions against current members
        for (std::size_t i = 0; i < members.size(); ++i) {
            int m = members[i];
            push(loop.mul(u, m));
            push(loop.mul(m, u));
            push(loop.ldiv(u, m));
            push(loop.ldiv(m, u));
            push(loop.rdiv(u, m));
            push(loop.rdiv(m, u));
        }
        if (inner_maps) {
            for (int x = 0; x < n; ++x) {
                push(loop.ldiv(x, loop.mul(u, x))); // T(x)
                for (int y = 0; y < n; ++y) {
                    int xy = loop.mul(x, y);
                    push(loop.ldiv(xy, loop.mul(x, loop.mul(y, u)))); // L(x,y)
                    push(loop.rdiv(loop.mul(loop.mul(u, x), y), xy)); // R(x,y)
                }
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

} // namespace

std::vector<int> subloop_closure(const CayleyLoop& loop, std::span<const int> seed) {
    return saturate(loop, seed, false);
}

bool is_subloop(const CayleyLoop& loop, std::span<const int> members) {
    int n = loop.order();
    std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
    for (int m : members) {
        if (m < 0 || m >= n) return false;
        in[static_cast<std::size_t>(m)] = 1;
    }
    if (!in[static_cast<std::size_t>(loop.identity())]) return false;
    for (int a : members)
        for (int b : members)
            if (!in[static_cast<std::size_t>(loop.mul(a, b))] ||
                !in[static_cast<std::size_t>(loop.ldiv(a, b))] ||
                !in[static_cast<std::size_t>(loop.rdiv(a, b))])
                return false;
    return true;
}

bool is_normal(const CayleyLoop& loop, std::span<const int> members) {
    if (!is_subloop(loop, members)) return false;
    int n = loop.order();
    std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
    for (int m : members) in[static_cast<std::size_t>(m)] = 1;
    for (int u : members) {
        for (int x = 0; x < n; ++x) {
            if (!in[static_cast<std::size_t>(loop.ldiv(x, loop.mul(u, x)))]) return false;
            for (int y = 0; y < n; ++y) {
                int xy = loop.mul(x, y);
                if (!in[static_cast<std::size_t>(loop.ldiv(xy, loop.mul(x, loop.mul(y, u))))])
                    return false;
                if (!in[static_cast<std::size_t>(loop.rdiv(loop.mul(loop.mul(u, x), y), xy))])
                    return false;
            }
        }
    }
    return true;
}

NormalSubloop::NormalSubloop(const CayleyLoop& parent, std::vector<int> members)
    : parent_(&parent), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!is_normal(parent, members_))
        throw LoopError("subset is not a normal subloop of " + parent.loop_name());
    in_.assign(static_cast<std::size_t>(parent.order()), 0);
    for (int m : members_) in_[static_cast<std::size_t>(m)] = 1;
}

NormalSubloop normal_closure(const CayleyLoop& loop, std::span<const int> seed) {
    return NormalSubloop(loop, saturate(loop, seed, true));
}

namespace {

// value copies of the same loop are fine; different tables are not
void require_same_loop(const CayleyLoop& a, const CayleyLoop& b, const char* what) {
    if (&a == &b) return;
    bool same = a.order() == b.order();
    for (int x = 0; same && x < a.order(); ++x)
        for (int y = 0; y < a.order(); ++y)
            if (a.mul(x, y) != b.mul(x, y)) {
                same = false;
                break;
            }
    if (!same) throw LoopError(std::string(what) + ": subloop does not belong to this loop");
}

} // namespace

NormalSubloop bracket_nl(const NormalSubloop& N, const CayleyLoop& L) {
    require_same_loop(N.parent(), L, "bracket_nl");
    int n = L.order();
    std::vector<std::uint8_t> gen(static_cast<std::size_t>(n), 0);
    for (int m : N.members()) {
        for (int x = 0; x < n; ++x) {
            gen[static_cast<std::size_t>(L.com(m, x))] = 1;
            for (int y = 0; y < n; ++y) {
                gen[static_cast<std::size_t>(L.assoc(m, x, y))] = 1;
                gen[static_cast<std::size_t>(L.assoc(x, m, y))] = 1;
                gen[static_cast<std::size_t>(L.assoc(x, y, m))] = 1;
            }
        }
    }
    std::vector<int> seed;
    for (int v = 0; v < n; ++v)
        if (gen[static_cast<std::size_t>(v)]) seed.push_back(v);
    return normal_closure(L, seed);
}

Quotient quotient(const CayleyLoop& loop, const NormalSubloop& N) {
    require_same_loop(N.parent(), loop, "quotient");
    int n = loop.order();
    // cosets xN; for a normal subloop they partition the loop
    std::vector<int> to_coset(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> cosets;
    for (int x = 0; x < n; ++x) {
        if (to_coset[static_cast<std::size_t>(x)] != -1) continue;
        int c = static_cast<int>(cosets.size());
        std::vector<int> members;
        for (int m : N.members()) {
            int y = loop.mul(x, m);
            if (to_coset[static_cast<std::size_t>(y)] != -1 &&
                to_coset[static_cast<std::size_t>(y)] != c)
                throw LoopError("cosets do not partition: subloop not normal");
            if (to_coset[static_cast<std::size_t>(y)] == -1) {
                to_coset[static_cast<std::size_t>(y)] = c;
                members.push_back(y);
            }
        }
        if (static_cast<int>(members.size()) != N.order())
            throw LoopError("coset size mismatch: subloop not normal");
        cosets.push_back(std::move(members));
    }
    int k = static_cast<int>(cosets.size());
    // representative: least element name in the coset
    std::vector<int> lift(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        int best = cosets[static_cast<std::size_t>(c)].front();
        for (int y : cosets[static_cast<std::size_t>(c)])
            if (loop.name(y) < loop.name(best)) best = y;
        lift[static_cast<std::size_t>(c)] = best;
    }
    std::vector<std::vector<int>> table(static_cast<std::size_t>(k),
                                        std::vector<int>(static_cast<std::size_t>(k)));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = to_coset
                [static_cast<std::size_t>(loop.mul(lift[static_cast<std::size_t>(a)],
                                                   lift[static_cast<std::size_t>(b)]))];
    // well-definedness: the projection must be a homomorphism on all pairs
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (to_coset[static_cast<std::size_t>(loop.mul(x, y))] !=
                table[static_cast<std::size_t>(to_coset[static_cast<std::size_t>(x)])]
                     [static_cast<std::size_t>(to_coset[static_cast<std::size_t>(y)])])
                throw LoopError("coset product ill-defined: subloop not normal");
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
        names.push_back("[" + loop.name(lift[static_cast<std::size_t>(c)]) + "]");
    Quotient q{CayleyLoop::from_table(loop.loop_name() + "/N", std::move(names), table),
               std::move(to_coset), std::move(lift)};
    return q;
}

std::vector<int> centre(const CayleyLoop& loop) {
    int n = loop.order();
    std::vector<int> out;
    for (int z = 0; z < n; ++z) {
        bool central = true;
        for (int x = 0; x < n && central; ++x) {
            if (loop.mul(z, x) != loop.mul(x, z)) {
                central = false;
                break;
            }
            for (int y = 0; y < n; ++y) {
                if (loop.mul(z, loop.mul(x, y)) != loop.mul(loop.mul(z, x), y) ||
                    loop.mul(x, loop.mul(z, y)) != loop.mul(loop.mul(x, z), y) ||
                    loop.mul(x, loop.mul(y, z)) != loop.mul(loop.mul(x, y), z)) {
                    central = false;
                    break;
                }
            }
        }
        if (central) out.push_back(z);
    }
    return out;
}

Subloop restrict_to_subloop(const CayleyLoop& loop, std::span<const int> members) {
    if (!is_subloop(loop, members)) throw LoopError("subset is not a subloop");
    std::vector<int> to_parent(members.begin(), members.end());
    std::sort(to_parent.begin(), to_parent.end());
    int k = static_cast<int>(to_parent.size());
    std::vector<int> from_parent(static_cast<std::size_t>(loop.order()), -1);
    for (int i = 0; i < k; ++i) from_parent[static_cast<std::size_t>(to_parent[static_cast<std::size_t>(i)])] = i;
    std::vector<std::vector<int>> table(static_cast<std::size_t>(k),
                                        std::vector<int>(static_cast<std::size_t>(k)));
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) names.push_back(loop.name(to_parent[static_cast<std::size_t>(i)]));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                from_parent[static_cast<std::size_t>(loop.mul(to_parent[static_cast<std::size_t>(i)],
                                                              to_parent[static_cast<std::size_t>(j)]))];
    Subloop s{CayleyLoop::from_table(loop.loop_name() + "|sub", std::move(names), table),
              std::move(to_parent), std::move(from_parent)};
    return s;
}

} // namespace loopforge
