#include "quadring/normsolve.hpp"

#include <json.hpp>

#include <algorithm>

#include "quadring/format.hpp"
#include "quadring/zarith.hpp"

#include "mpz_ll.hpp"

namespace quadring {

namespace {

using ordered_json = nlohmann::ordered_json;

long long mod8(long long n) { return ((n % 8) + 8) % 8; }

mpz_class isqrt_mpz(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Largest v any unit-reduced solution of u^2 - m v^2 = +-4p can carry.
// With eps = X + Y*sqrt(m) the fundamental unit of Z[sqrt(m)], a solution can
// be scaled into sqrt(p) <= |alpha| < eps*sqrt(p), whence
// v^2 <= p*(eps+1)^2 / (4m) <= p*C / (4m) for the integer majorant C below.
mpz_class real_v_bound(const FieldParams& field, long long p) {
    FundUnit fu = fundamental_unit(field);
    mpz_class X = fu.unit.u() / 2, Y = fu.unit.v() / 2;
    mpz_class sqrt_m_up = isqrt_mpz(ll2z(field.m));
    if (sqrt_m_up * sqrt_m_up < ll2z(field.m)) ++sqrt_m_up;
    mpz_class C = (X + 1) * (X + 1) + ll2z(field.m) * Y * Y + 2 * (X + 1) * Y * sqrt_m_up;
    return isqrt_mpz(ll2z(p) * C / ll2z(4 * field.m)) + 2;
}

std::vector<long long> required_primes(const FieldParams& field) {
    std::vector<long long> req;
    for (long long p : primes_upto(field))
        if (kronecker(field.delta, p) != -1) req.push_back(p);
    if (mod8(field.m) == 1 && (req.empty() || req.front() != 2))
        req.insert(req.begin(), 2);
    return req;
}

} // namespace

std::optional<QuadInt> solve_norm_abs(const FieldParams& field, long long p,
                                      const SearchLimits& limits) {
    if (p < 1) fail(errc::out_of_range, "norm target must be positive");
    if (kronecker(field.delta, p) == -1) return std::nullopt;

    mpz_class v_bound = field.is_real()
                            ? real_v_bound(field, p)
                            : isqrt_mpz(4 * ll2z(p) / ll2z(-field.m)) + 1;
    bool capped = v_bound > ll2z(limits.v_cap);
    long long v_stop = capped ? limits.v_cap : v_bound.get_si();

    mpz_class four_p = 4 * ll2z(p);
    mpz_class m_big = ll2z(field.m);
    mpz_class mv2 = 0, t, u;
    for (long long v = 0; v <= v_stop; ++v) {
        if (v > 0) mv2 += m_big * ll2z(2 * v - 1);
        // Norm -p first: its u is the smaller of the two at equal v.
        t = mv2 - four_p;
        if (field.is_real() && t >= 0 && mpz_perfect_square_p(t.get_mpz_t())) {
            mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
            return QuadInt::canon(u, ll2z(v), field);
        }
        t = mv2 + four_p;
        if (t < 0) break;
        if (mpz_perfect_square_p(t.get_mpz_t())) {
            mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
            return QuadInt::canon(u, ll2z(v), field);
        }
    }
    if (capped)
        fail(errc::search_cap_exceeded,
             "norm search passed the v cap without resolving p = " + std::to_string(p));
    return std::nullopt;
}

std::optional<long long> PrimeTable::first_missing() const {
    for (long long p : required)
        if (!entries.count(p)) return p;
    return std::nullopt;
}

const QuadInt* PrimeTable::find(long long p) const {
    auto it = entries.find(p);
    return it == entries.end() ? nullptr : &it->second;
}

PrimeTable build_prime_table(const FieldParams& field, const SearchLimits& limits) {
    PrimeTable table;
    table.field = field;
    table.required = required_primes(field);
    for (long long p : table.required)
        if (auto pi = solve_norm_abs(field, p, limits)) table.entries.emplace(p, *pi);
    return table;
}

std::string to_json(const PrimeTable& table) {
    ordered_json j;
    j["m"] = table.field.m;
    j["delta"] = table.field.delta;
    j["required"] = table.required;
    ordered_json entries = ordered_json::object();
    for (const auto& [p, pi] : table.entries) entries[std::to_string(p)] = render(pi);
    j["entries"] = std::move(entries);
    return j.dump(2);
}

PrimeTable prime_table_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, e.what());
    }
    PrimeTable table;
    try {
        table.field = field_params(j.at("m").get<long long>());
        if (j.at("delta").get<long long>() != table.field.delta)
            fail(errc::table_mismatch, "stored delta disagrees with m");
        table.required = j.at("required").get<std::vector<long long>>();
        for (const auto& [key, val] : j.at("entries").items()) {
            long long p = std::stoll(key);
            QuadInt pi = parse_quadint(val.get<std::string>(), table.field);
            mpz_class n = pi.norm();
            if (n < 0) n = -n;
            if (n != ll2z(p))
                fail(errc::norm_mismatch, "entry for " + key + " has the wrong norm");
            table.entries.emplace(p, std::move(pi));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, e.what());
    } catch (const std::invalid_argument&) {
        fail(errc::parse_error, "entry keys must be integers");
    } catch (const std::out_of_range&) {
        fail(errc::parse_error, "entry key out of range");
    }
    if (table.required != required_primes(table.field))
        fail(errc::table_mismatch, "stored required set disagrees with m");
    for (const auto& [p, pi] : table.entries)
        if (std::find(table.required.begin(), table.required.end(), p) ==
            table.required.end())
            fail(errc::table_mismatch, "entry for a prime outside the required set");
    return table;
}

} // namespace quadring
