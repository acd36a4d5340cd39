#include "loopforge/higman.hpp"

#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace loopforge {

std::string ab_vector_to_string(const AbVector<ZAmbient>& b) {
    if (b.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [sym, coeff] : b.terms()) {
        if (!first) out << (coeff > 0 ? " + " : " - ");
        else if (coeff < 0) out << "-";
        first = false;
        mpz_class mag = abs(coeff);
        if (mag != 1) out << mag.get_str() << "*";
        if (sym.is_g) out << "g(" << sym.gen << ")";
        else out << "f(" << sym.l1.get_str() << "," << sym.l2.get_str() << ")";
    }
    return out.str();
}

HigmanElement<ZAmbient> delta_power(int m) {
    if (m < 1) throw LoopError("power exponent must be >= 1");
    HigmanLoop<ZAmbient> h;
    HigmanElement<ZAmbient> y = h.generator_image("y", 1);
    HigmanElement<ZAmbient> r = y;
    for (int i = 1; i < m; ++i) r = h.mul(r, y);
    return r;
}

HigmanElement<ZAmbient> delta_witness_deviation(int m, int n) {
    if (m < 1) throw LoopError("higman witness needs m >= 1");
    if (n < 0) throw LoopError("higman witness needs n >= 0");
    HigmanLoop<ZAmbient> h;
    std::map<std::pair<int, int>, HigmanElement<ZAmbient>> memo;
    // D(m,0) = delta of the associator (y^m, y, y);
    // D(m,k) = (D(m,k-1) D(1,k-1)) \ D(m+1,k-1)
    auto rec = [&](auto&& self, int mm, int k) -> const HigmanElement<ZAmbient>& {
        auto it = memo.find({mm, k});
        if (it != memo.end()) return it->second;
        HigmanElement<ZAmbient> value;
        if (k == 0) {
            HigmanElement<ZAmbient> u = delta_power(mm);
            HigmanElement<ZAmbient> y = delta_power(1);
            value = h.ldiv(h.mul(u, h.mul(y, y)), h.mul(h.mul(u, y), y));
        } else {
            const auto& a = self(self, mm, k - 1);
            const auto& b = self(self, 1, k - 1);
            const auto& c = self(self, mm + 1, k - 1);
            value = h.ldiv(h.mul(a, b), c);
        }
        return memo.emplace(std::make_pair(mm, k), std::move(value)).first->second;
    };
    return rec(rec, m, n);
}

WitnessReport higman_witness(int m, int n) {
    WitnessReport r;
    r.m = m;
    r.n = n;
    r.value = delta_witness_deviation(m, n);
    r.loop_part = r.value.l;
    r.g_coeff = 0;
    r.leading_p = -1;
    r.leading_q = -1;
    r.leading_coeff = 0;
    r.max_other_p = -1;
    for (const auto& [sym, coeff] : r.value.b.terms()) {
        if (sym.is_g) {
            if (sym.gen == "y") r.g_coeff = coeff;
            continue;
        }
        if (sym.l1 > r.leading_p || (sym.l1 == r.leading_p && sym.l2 == 1)) {
            r.leading_p = sym.l1;
            r.leading_q = sym.l2;
            r.leading_coeff = coeff;
        }
    }
    for (const auto& [sym, coeff] : r.value.b.terms()) {
        if (sym.is_g) continue;
        if (sym.l1 == r.leading_p && sym.l2 == r.leading_q) continue;
        if (sym.l1 > r.max_other_p) r.max_other_p = sym.l1;
    }
    r.nonzero = !(r.value == HigmanLoop<ZAmbient>().identity());
    // a nonzero delta-image certifies the element is outside gamma_3 of the
    // free loop (the kernel of delta is [N,F] = gamma_3)
    r.verdict = r.nonzero ? "outside gamma3" : "degenerate";
    return r;
}

namespace {

nlohmann::json mpz_json(const mpz_class& v) {
    if (v.fits_slong_p()) return nlohmann::json(v.get_si());
    return nlohmann::json(v.get_str());
}

} // namespace

nlohmann::json witness_to_json(const WitnessReport& r) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [sym, coeff] : r.value.b.terms()) {
        if (sym.is_g)
            coeffs.push_back(nlohmann::json{{"symbol", "g"}, {"gen", sym.gen},
                                            {"coeff", mpz_json(coeff)}});
        else
            coeffs.push_back(nlohmann::json{{"symbol", "f"},
                                            {"p", mpz_json(sym.l1)},
                                            {"q", mpz_json(sym.l2)},
                                            {"coeff", mpz_json(coeff)}});
    }
    return nlohmann::json{{"m", r.m},
                          {"n", r.n},
                          {"loop_part", mpz_json(r.loop_part)},
                          {"leading_symbol", {mpz_json(r.leading_p), mpz_json(r.leading_q)}},
                          {"leading_coeff", mpz_json(r.leading_coeff)},
                          {"max_other_p", mpz_json(r.max_other_p)},
                          {"g_coeff", mpz_json(r.g_coeff)},
                          {"nonzero", r.nonzero},
                          {"verdict", r.verdict},
                          {"value", ab_vector_to_string(r.value.b)},
                          {"coefficients", std::move(coeffs)}};
}

} // namespace loopforge
