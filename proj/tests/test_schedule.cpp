#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirspec/schedule.hpp"

using namespace dirspec;

TEST_CASE("constant schedule for the accuracy-mode driver") {
    ParameterSchedule s = make_schedule_theorem2(make_rat(1, 2), make_rat(1, 100), 8);
    CHECK(s.rows.size() == 8);
    CHECK(s.eps_star == make_rat(1, 400));
    const StepParams& r = s.at(3);
    CHECK(r.case_tag == CaseTag::case1);
    CHECK(r.alpha == make_rat(197, 400));
    CHECK(r.omega == make_rat(99, 200));
    CHECK(r.eps == make_rat(1, 400));

    // the growth rule overshoots the admissible range here and is clamped
    // to the largest k allowed by 4 k eps^2 <= H-
    Rat h_minus = s.H_minus(2);
    Int k_hi = k_upper_bound(h_minus, s.eps_star);
    CHECK(r.k == k_hi);
    CHECK(k_growth_rule(s.eps_star) > k_hi);
    CHECK(r.k >= k_lower_bound(s.H_plus_factor(2), s.eps_star));
    s.validate();
}

TEST_CASE("growth rule value and clamping at finer accuracy") {
    // floor(24 sqrt5 * 1000) + 1
    CHECK(k_growth_rule(make_rat(1, 1000)) == 53666);
    ParameterSchedule s = make_schedule_theorem2(make_rat(1, 2), make_rat(1, 250), 4);
    CHECK(s.at(2).k == k_upper_bound(s.H_minus(2), s.eps_star));
    CHECK(s.at(2).k < 53666);
    // at very fine accuracy the growth rule itself is admissible
    ParameterSchedule fine = make_schedule_theorem2(make_rat(1, 2), make_rat(1, 12000), 2);
    CHECK(fine.at(2).k == k_growth_rule(fine.eps_star));
}

TEST_CASE("case selection") {
    CHECK(make_schedule_theorem2(make_rat(1, 2), make_rat(1, 100), 2).at(2).case_tag ==
          CaseTag::case1);
    CHECK(make_schedule_theorem2(make_rat(9, 8), make_rat(1, 100), 2).at(2).case_tag ==
          CaseTag::case2);
    // a target just above 1 with a window caught between the cases
    CHECK_THROWS_AS(make_schedule_theorem2(make_rat(803, 800), make_rat(1, 100), 2), ConfigError);
}

TEST_CASE("rejected configurations") {
    CHECK_THROWS_AS(make_schedule_theorem2(make_rat(1, 300), make_rat(1, 100), 2), ConfigError);
    CHECK_THROWS_AS(make_schedule_theorem2(make_rat(1, 2), make_rat(1, 20), 2), ConfigError);
    CHECK_THROWS_AS(make_schedule_theorem2(make_rat(6, 5), make_rat(1, 100), 2), ConfigError);
    // eps = 1/25 keeps eps* = 1/100 under the cap but empties [K-, K+]
    CHECK_THROWS_AS(make_schedule_theorem2(make_rat(1, 2), make_rat(1, 25), 2), ConfigError);
}

TEST_CASE("schedule invariants are enforced") {
    ParameterSchedule s = make_schedule_theorem2(make_rat(1, 2), make_rat(1, 100), 4);
    s.validate();
    ParameterSchedule broken = s;
    broken.rows[2].k = broken.rows[2].k * 100;  // violates the upper end of the k window
    CHECK_THROWS_AS(broken.validate(), ConfigError);
    ParameterSchedule widened = s;
    widened.rows[1].omega = widened.rows[1].omega + 1;
    CHECK_THROWS_AS(widened.validate(), ConfigError);
}

TEST_CASE("growth-mode schedule") {
    ParameterSchedule s = make_schedule_theorem1(make_rat(1, 2), {}, 6);
    CHECK(s.rows.size() == 6);
    s.validate();
    for (int nu = 2; nu <= 6; ++nu) {
        const StepParams& r = s.at(nu);
        CHECK(r.eps == make_rat(1, 100) / (Int(1) << (nu - 1)));
        // windows shrink toward lambda
        CHECK(r.alpha >= s.at(nu - 1).alpha);
        CHECK(r.omega <= s.lambda);
        // enough growth for the default phi(nu) = nu^2
        CHECK(s.B_minus(nu) * Rat(r.k) * Rat(r.k) >= Rat(nu) * Rat(nu));
    }

    // a singular-direction target keeps the windows pinned just above eps
    ParameterSchedule zero = make_schedule_theorem1(Rat(0), {}, 5);
    zero.validate();
    CHECK(zero.at(4).alpha == 30 * zero.at(4).eps);

    // a case-2 target
    ParameterSchedule high = make_schedule_theorem1(make_rat(9, 8), {}, 5);
    high.validate();
    CHECK(high.at(3).case_tag == CaseTag::case2);

    // custom growth targets beyond the admissible k range are refused
    std::vector<std::pair<int, Rat>> phi{{4, Rat(Int("1000000000000000000000000000000"))}};
    CHECK_THROWS_AS(make_schedule_theorem1(make_rat(1, 2), phi, 5), ConfigError);
}

TEST_CASE("derived bound ranges") {
    ParameterSchedule s = make_schedule_theorem2(make_rat(1, 2), make_rat(1, 100), 3);
    for (int nu = 2; nu <= 3; ++nu) {
        CHECK(s.B_minus(nu) < s.B_plus(nu));
        CHECK(s.H_minus(nu) >= make_rat(1, 40));
        CHECK(s.H_minus(nu) <= make_rat(1, 5));
        CHECK(s.H_plus_sq(nu) >= 5);
        CHECK(s.H_plus_sq(nu) <= 320);
        CHECK(s.eps_minus(nu) == s.at(nu - 1).eps * s.at(nu - 1).eps);
    }
}
