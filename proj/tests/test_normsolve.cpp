#include <doctest.h>
#include <quadring/format.hpp>
#include <quadring/normsolve.hpp>

#include "support/oracle.hpp"

using namespace quadring;

TEST_CASE("solve_norm_abs frozen solutions") {
    FieldParams f14 = field_params(14);
    auto s = solve_norm_abs(f14, 2);
    REQUIRE(s.has_value());
    CHECK(*s == QuadInt::from_ab(4, 1, f14));  // N = 16 - 14 = 2

    FieldParams f2 = field_params(2);
    s = solve_norm_abs(f2, 7);
    REQUIRE(s.has_value());
    CHECK(*s == QuadInt::from_ab(3, 1, f2));

    FieldParams f17 = field_params(17);
    s = solve_norm_abs(f17, 2);
    REQUIRE(s.has_value());
    CHECK(*s == QuadInt::canon(3, 1, f17));  // N = (9-17)/4 = -2
    CHECK(s->norm() == -2);

    FieldParams fm1 = field_params(-1);
    s = solve_norm_abs(fm1, 2);
    REQUIRE(s.has_value());
    CHECK(s->norm() == 2);

    FieldParams fm7 = field_params(-7);
    s = solve_norm_abs(fm7, 2);
    REQUIRE(s.has_value());
    CHECK(*s == QuadInt::canon(1, 1, fm7));  // N = (1+7)/4 = 2
}

TEST_CASE("solve_norm_abs negative and error cases") {
    FieldParams f10 = field_params(10);
    CHECK_FALSE(solve_norm_abs(f10, 2).has_value());  // x^2-10y^2 = +-2, +-8 blocked mod 5
    CHECK_FALSE(solve_norm_abs(f10, 3).has_value());
    FieldParams f14 = field_params(14);
    CHECK_FALSE(solve_norm_abs(f14, 3).has_value());  // kronecker(56,3) = -1
    CHECK_THROWS_AS(solve_norm_abs(f14, 0), error);
    CHECK_THROWS_AS(solve_norm_abs(f14, -5), error);
}

TEST_CASE("solve_norm_abs respects the cap override") {
    FieldParams f94 = field_params(94);
    SearchLimits tight;
    tight.v_cap = 1;  // fundamental unit is huge; v = 1 cannot reach p = 5
    CHECK_THROWS_AS(solve_norm_abs(f94, 5, tight), error);
    try {
        solve_norm_abs(f94, 5, tight);
    } catch (const error& e) {
        CHECK(e.code() == errc::search_cap_exceeded);
    }
    // Still fine when the answer shows up below the cap.
    SearchLimits enough;
    enough.v_cap = 100000;
    auto s = solve_norm_abs(f94, 5, enough);
    REQUIRE(s.has_value());
    mpz_class n = s->norm();
    CHECK((n == 5 || n == -5));
}

TEST_CASE("norm-equation agreement with the naive oracle, m up to 100, p up to 20") {
    for (long long m = 2; m <= 100; ++m) {
        if (!is_squarefree(m)) continue;
        FieldParams f = field_params(m);
        // Any representable p has a witness with v <= sqrt(p)*(eps+1)/sqrt(m),
        // so capping the oracle there keeps its "none" answers authoritative.
        oracle::DUnit du = oracle::brute_d_unit(m);
        mpz_class eps_up = (du.u + du.v * static_cast<long>(oracle::isqrt(m) + 1)) / 2 + 2;
        for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 17LL, 19LL}) {
            CAPTURE(m);
            CAPTURE(p);
            mpz_class vb = static_cast<long>(oracle::isqrt(p) + 1) * (eps_up + 1);
            vb = vb / static_cast<long>(oracle::isqrt(m)) + 8;
            vb += vb / 2;
            auto mine = solve_norm_abs(f, p);
            auto ref = oracle::solve_norm_capped(m, p, vb.get_si());
            CHECK(mine.has_value() == ref.has_value());
            if (mine) {
                mpz_class n = mine->norm();
                if (n < 0) n = -n;
                CHECK(n == static_cast<long>(p));
            }
        }
    }
}

TEST_CASE("required primes force 2 for m = 1 mod 8") {
    FieldParams f17 = field_params(17);  // delta 17 < 20: no Gauss primes, 2 forced
    PrimeTable t = build_prime_table(f17);
    CHECK(t.required == std::vector<long long>{2});
    CHECK(t.complete());

    FieldParams f33 = field_params(33);  // delta 33: Gauss allows 2; forced anyway, once
    PrimeTable t33 = build_prime_table(f33);
    CHECK(t33.required == std::vector<long long>{2});

    FieldParams f14 = field_params(14);
    PrimeTable t14 = build_prime_table(f14);
    CHECK(t14.required == std::vector<long long>{2});  // 3 is inert in m = 14
    REQUIRE(t14.complete());
    CHECK_FALSE(t14.first_missing().has_value());
    CHECK(t14.find(2) != nullptr);
    CHECK(t14.find(3) == nullptr);
    CHECK(render(*t14.find(2)) == "4+1*sqrt(14)");
}

TEST_CASE("incomplete tables report the smallest gap") {
    FieldParams f10 = field_params(10);
    PrimeTable t = build_prime_table(f10);
    CHECK_FALSE(t.complete());
    CHECK(t.first_missing().value() == 2);
    CHECK(t.required == std::vector<long long>{2});  // 3 is already past the Gauss cutoff
}

TEST_CASE("prime table JSON round-trip") {
    FieldParams f14 = field_params(14);
    PrimeTable t = build_prime_table(f14);
    std::string js = to_json(t);
    PrimeTable back = prime_table_from_json(js);
    CHECK(back.field == t.field);
    CHECK(back.required == t.required);
    REQUIRE(back.entries.size() == t.entries.size());
    for (auto& [p, pi] : t.entries) CHECK(*back.find(p) == pi);
}

TEST_CASE("prime table JSON rejects corruption") {
    FieldParams f14 = field_params(14);
    std::string js = to_json(build_prime_table(f14));
    CHECK_THROWS_AS(prime_table_from_json("not json"), error);

    std::string wrong_delta = js;
    auto pos = wrong_delta.find("56");
    wrong_delta.replace(pos, 2, "40");
    CHECK_THROWS_AS(prime_table_from_json(wrong_delta), error);

    std::string wrong_entry = js;
    pos = wrong_entry.find("4+1*sqrt(14)");
    wrong_entry.replace(pos, 12, "5+1*sqrt(14)");
    CHECK_THROWS_AS(prime_table_from_json(wrong_entry), error);
    try {
        prime_table_from_json(wrong_entry);
    } catch (const error& e) {
        CHECK(e.code() == errc::norm_mismatch);
    }
}
