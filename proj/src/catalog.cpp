#include "loopforge/catalog.hpp"

#include <array>
#include <functional>
#include <map>

namespace loopforge {

namespace {

CayleyLoop cyclic(int n) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    return CayleyLoop::from_table("Z_" + std::to_string(n), std::move(names), table);
}

CayleyLoop klein4() {
    std::vector<std::string> names = {"1", "a", "b", "ab"};
    // xor on two bits
    std::vector<std::vector<int>> table(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = i ^ j;
    return CayleyLoop::from_table("V4", std::move(names), table);
}

CayleyLoop sym3() {
    // permutations of {0,1,2}; product = composition, (pq)(x) = p(q(x))
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                             {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::string> names = {"e", "(01)", "(12)", "(02)", "(012)", "(021)"};
    auto find = [&](const std::array<int, 3>& p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<int>(i);
        return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::array<int, 3> comp{};
            for (int x = 0; x < 3; ++x)
                comp[static_cast<std::size_t>(x)] =
                    perms[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(perms[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)])];
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = find(comp);
        }
    return CayleyLoop::from_table("S3", std::move(names), table);
}

CayleyLoop dihedral4() {
    // elements r^a s^b, index = a + 4b; (r^a s^b)(r^c s^d) = r^(a + c*(-1)^b) s^(b xor d)
    std::vector<std::string> names = {"1", "r", "r2", "r3", "s", "rs", "r2s", "r3s"};
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 2; ++d) {
                    int rot = ((b == 0 ? a + c : a - c) % 4 + 4) % 4;
                    table[static_cast<std::size_t>(a + 4 * b)][static_cast<std::size_t>(c + 4 * d)] =
                        rot + 4 * (b ^ d);
                }
    return CayleyLoop::from_table("D4", std::move(names), table);
}

// (sign, unit) pairs; index = 2*unit + (sign < 0)
int signed_unit_index(int sign, int unit) { return 2 * unit + (sign < 0 ? 1 : 0); }

CayleyLoop quaternion8() {
    // units 0=1, 1=i, 2=j, 3=k
    int us[4][4];    // unit of product
    int ss[4][4];    // sign of product
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == 0) { us[i][j] = j; ss[i][j] = 1; }
            else if (j == 0) { us[i][j] = i; ss[i][j] = 1; }
            else if (i == j) { us[i][j] = 0; ss[i][j] = -1; }
            else {
                us[i][j] = 6 - i - j; // {i,j,k} = {1,2,3}
                // cyclic (1,2,3) positive
                ss[i][j] = (j == i % 3 + 1) ? 1 : -1;
            }
        }
    std::vector<std::string> unit_names = {"1", "i", "j", "k"};
    std::vector<std::string> names(8);
    for (int u = 0; u < 4; ++u) {
        names[static_cast<std::size_t>(signed_unit_index(1, u))] = unit_names[static_cast<std::size_t>(u)];
        names[static_cast<std::size_t>(signed_unit_index(-1, u))] = "-" + unit_names[static_cast<std::size_t>(u)];
    }
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int u1 = 0; u1 < 4; ++u1)
        for (int s1 : {1, -1})
            for (int u2 = 0; u2 < 4; ++u2)
                for (int s2 : {1, -1})
                    table[static_cast<std::size_t>(signed_unit_index(s1, u1))]
                         [static_cast<std::size_t>(signed_unit_index(s2, u2))] =
                             signed_unit_index(s1 * s2 * ss[u1][u2], us[u1][u2]);
    return CayleyLoop::from_table("Q8", std::move(names), table);
}

CayleyLoop octonion16() {
    static const int lines[7][3] = {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7},
                                    {5, 6, 1}, {6, 7, 2}, {7, 1, 3}};
    int us[8][8];
    int ss[8][8];
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (i == 0) { us[i][j] = j; ss[i][j] = 1; }
            else if (j == 0) { us[i][j] = i; ss[i][j] = 1; }
            else if (i == j) { us[i][j] = 0; ss[i][j] = -1; }
            else { us[i][j] = -1; ss[i][j] = 0; }
        }
    for (const auto& l : lines) {
        int a = l[0], b = l[1], c = l[2];
        us[a][b] = c; ss[a][b] = 1;
        us[b][c] = a; ss[b][c] = 1;
        us[c][a] = b; ss[c][a] = 1;
        us[b][a] = c; ss[b][a] = -1;
        us[c][b] = a; ss[c][b] = -1;
        us[a][c] = b; ss[a][c] = -1;
    }
    std::vector<std::string> names(16);
    for (int u = 0; u < 8; ++u) {
        std::string nm = u == 0 ? "1" : "e" + std::to_string(u);
        names[static_cast<std::size_t>(signed_unit_index(1, u))] = nm;
        names[static_cast<std::size_t>(signed_unit_index(-1, u))] = "-" + nm;
    }
    std::vector<std::vector<int>> table(16, std::vector<int>(16));
    for (int u1 = 0; u1 < 8; ++u1)
        for (int s1 : {1, -1})
            for (int u2 = 0; u2 < 8; ++u2)
                for (int s2 : {1, -1})
                    table[static_cast<std::size_t>(signed_unit_index(s1, u1))]
                         [static_cast<std::size_t>(signed_unit_index(s2, u2))] =
                             signed_unit_index(s1 * s2 * ss[u1][u2], us[u1][u2]);
    return CayleyLoop::from_table("O16", std::move(names), table);
}

CayleyLoop chein_double_s3() {
    CayleyLoop g = sym3();
    int n = g.order();
    auto ginv = [&](int x) { return g.ldiv(x, g.identity()); };
    std::vector<std::string> names;
    for (int x = 0; x < n; ++x) names.push_back(g.name(x));
    for (int x = 0; x < n; ++x) names.push_back(g.name(x) + "u");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(2 * n),
                                        std::vector<int>(static_cast<std::size_t>(2 * n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = g.mul(x, y);
            table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y + n)] = g.mul(y, x) + n;
            table[static_cast<std::size_t>(x + n)][static_cast<std::size_t>(y)] =
                g.mul(x, ginv(y)) + n;
            table[static_cast<std::size_t>(x + n)][static_cast<std::size_t>(y + n)] =
                g.mul(ginv(y), x);
        }
    return CayleyLoop::from_table("M(S3,2)", std::move(names), table);
}

CayleyLoop cml81() {
    auto coord = [](int idx, int k) { return (idx / (k == 0 ? 27 : k == 1 ? 9 : k == 2 ? 3 : 1)) % 3; };
    auto pack = [](int a, int b, int c, int d) { return 27 * a + 9 * b + 3 * c + d; };
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(81, std::vector<int>(81));
    for (int i = 0; i < 81; ++i) {
        names.push_back("(" + std::to_string(coord(i, 0)) + "," + std::to_string(coord(i, 1)) +
                        "," + std::to_string(coord(i, 2)) + "," + std::to_string(coord(i, 3)) + ")");
    }
    for (int i = 0; i < 81; ++i)
        for (int j = 0; j < 81; ++j) {
            int x1 = coord(i, 0), x2 = coord(i, 1), x3 = coord(i, 2), x4 = coord(i, 3);
            int y1 = coord(j, 0), y2 = coord(j, 1), y3 = coord(j, 2), y4 = coord(j, 3);
            int f = ((x1 - y1) * (x2 * y3 - x3 * y2)) % 3;
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                pack((x1 + y1) % 3, (x2 + y2) % 3, (x3 + y3) % 3, ((x4 + y4 + f) % 3 + 3) % 3);
        }
    return CayleyLoop::from_table("CML81", std::move(names), table);
}

CayleyLoop ls5() {
    std::vector<std::vector<int>> table = {{0, 1, 2, 3, 4},
                                           {1, 0, 3, 4, 2},
                                           {2, 3, 4, 0, 1},
                                           {3, 4, 1, 2, 0},
                                           {4, 2, 0, 1, 3}};
    return CayleyLoop::from_table("LS5", {"0", "1", "2", "3", "4"}, table);
}

} // namespace

CayleyLoop catalog(const std::string& name) {
    if (name.size() > 2 && name.compare(0, 2, "Z_") == 0) {
        int n = 0;
        try {
            n = std::stoi(name.substr(2));
        } catch (const std::exception&) {
            throw LoopError("unknown catalog loop '" + name + "'");
        }
        if (n >= 1 && n <= 16 && name == "Z_" + std::to_string(n)) return cyclic(n);
        throw LoopError("unknown catalog loop '" + name + "' (cyclic range is Z_1..Z_16)");
    }
    if (name == "V4") return klein4();
    if (name == "S3") return sym3();
    if (name == "D4") return dihedral4();
    if (name == "Q8") return quaternion8();
    if (name == "O16") return octonion16();
    if (name == "M(S3,2)") return chein_double_s3();
    if (name == "CML81") return cml81();
    if (name == "LS5") return ls5();
    throw LoopError("unknown catalog loop '" + name + "'");
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (int n = 1; n <= 16; ++n) out.push_back("Z_" + std::to_string(n));
    out.insert(out.end(), {"V4", "S3", "D4", "Q8", "O16", "M(S3,2)", "CML81", "LS5"});
    return out;
}

} // namespace loopforge
