#include <algorithm>

#include "dirspec/engine.hpp"

namespace dirspec {

std::string to_string(CondStatus s) {
    switch (s) {
        case CondStatus::pass: return "pass";
        case CondStatus::fail: return "fail";
        case CondStatus::vacuous: return "vacuous";
        case CondStatus::seed_exempt: return "seed";
    }
    return "?";
}

std::string to_string(CertMode m) {
    switch (m) {
        case CertMode::none: return "none";
        case CertMode::enumerated: return "enumerated";
        case CertMode::certified: return "certified";
    }
    return "?";
}

std::vector<IntVec3> ConstructionState::vectors() const {
    std::vector<IntVec3> ws;
    ws.reserve(steps.size());
    for (const StepRecord& s : steps) ws.push_back(s.w);
    return ws;
}

namespace {

const IntVec3& at(const std::vector<IntVec3>& ws, int nu) {
    return ws.at(static_cast<size_t>(nu - 1));
}

// |x v_nu - p|^2 for the integer point u, with v_nu = p_nu / q_nu
Rat dist_sq_to_axis(const IntVec3& w_nu, const IntVec3& u) {
    Rat d1 = Rat(u.q) * make_rat(w_nu.p1, w_nu.q) - Rat(u.p1);
    Rat d2 = Rat(u.q) * make_rat(w_nu.p2, w_nu.q) - Rat(u.p2);
    return d1 * d1 + d2 * d2;
}

struct CondCheck {
    ConditionReport& rep;
    int nu;

    void fail(int cond, const std::string& why) {
        rep.status[static_cast<size_t>(cond - 1)] = CondStatus::fail;
        rep.failures.push_back("step " + std::to_string(nu) + " condition " +
                               std::to_string(cond) + ": " + why);
    }
    void pass(int cond) { rep.status[static_cast<size_t>(cond - 1)] = CondStatus::pass; }
};

// Lattice-plane certificate for condition 4 at step nu >= 4: the extended
// cylinder is thinner than the plane spacing, and in the base plane its
// section (a tangency ellipse, all data rational) meets the two-dimensional
// lattice only in {0, +-(q_{nu-1}, 0)}.  The top plane follows by the
// central symmetry through the facet center.
bool certify_c4(const std::vector<IntVec3>& ws, const ParameterSchedule& sch, int nu,
                CondCheck& cc) {
    Frame fr = build_frame(at(ws, nu - 1), at(ws, nu - 2), at(ws, nu - 3));
    Expansion e = expand_in_basis(at(ws, nu), fr.w_nu, fr.w_nm1, fr.w_nm2);
    if (e.c3 != 1 && e.c3 != -1) {
        cc.fail(4, "not certifiable: step leaves the adjacent lattice plane");
        return false;
    }
    Rat y_over_d = Rat(e.c2) + Rat(e.c3) * fr.f_over_d;
    if (sgn(y_over_d) == 0) {
        cc.fail(4, "not certifiable: step lies over the previous axis");
        return false;
    }
    y_over_d = abs(y_over_d);

    const Rat& eps = sch.at(nu).eps;
    Rat dil = 1 + eps;
    Rat r_sq = r_sq_of(ws, nu);
    // (a) dilated radius below the plane spacing h
    if (r_sq * dil * dil >= fr.h_sq) {
        cc.fail(4, "extended radius reaches the next lattice plane");
        return false;
    }
    // (b) section-ellipse data; u/d must agree with q_nu R_nu^2
    Rat q2d2 = Rat(fr.q) * Rat(fr.q) * fr.d_sq;
    Rat x2 = q2d2 * y_over_d;
    Rat u_over_d = (x2 * x2 + Rat(fr.q) * Rat(fr.q)) / (Rat(at(ws, nu).q) * q2d2);
    if (u_over_d != Rat(at(ws, nu).q) * r_sq) {
        cc.fail(4, "section identity violated");
        return false;
    }
    EllipseSpec ell{Rat(fr.q), x2, u_over_d, fr.d_sq, dil};
    if (!ellipse_lattice_empty(ell, fr.q, fr.a0, Int(1000000))) {
        cc.fail(4, "foreign lattice point in the dilated section");
        return false;
    }
    return true;
}

// enumeration check that a (dilated) cylinder holds exactly `expected`
bool cylinder_holds_exactly(const Cylinder& cyl, const Rat& dil_sq,
                            std::vector<IntVec3> expected, const Int& enum_limit) {
    std::sort(expected.begin(), expected.end());
    return cylinder_contents_match(cyl, enum_limit, dil_sq, expected);
}

}  // namespace

Rat r_sq_of(const std::vector<IntVec3>& ws, int nu) {
    if (nu < 2) throw DomainError("R_nu needs nu >= 2");
    const IntVec3& w = at(ws, nu);
    return dist_sq_to_axis(w, at(ws, nu - 1));
}

Rat r_minus_sq_of(const std::vector<IntVec3>& ws, int nu) {
    if (nu < 3) throw DomainError("R_nu^- needs nu >= 3");
    const IntVec3& w = at(ws, nu);
    return dist_sq_to_axis(w, at(ws, nu - 2));
}

ConditionReport check_step_conditions(const std::vector<IntVec3>& ws,
                                      const ParameterSchedule& sch, int nu,
                                      const Int& enum_limit, bool fail_fast) {
    ConditionReport rep;
    CondCheck cc{rep, nu};
    auto bail = [&] { return fail_fast && !rep.all_ok(); };
    if (nu < 1 || nu > static_cast<int>(ws.size()))
        throw DomainError("check_step_conditions: no such step");
    const StepParams& sp = sch.at(nu);

    // condition 1
    if (nu >= 3) {
        if (is_unimodular(at(ws, nu - 2), at(ws, nu - 1), at(ws, nu)))
            cc.pass(1);
        else
            cc.fail(1, "determinant is not +-1");
    }
    if (bail()) return rep;

    if (nu < 2) return rep;
    if (sgn(at(ws, nu).q) <= 0 || at(ws, nu).q <= at(ws, nu - 1).q) {
        cc.fail(6, "q_nu must exceed q_{nu-1}");
        return rep;
    }

    Rat r_sq = r_sq_of(ws, nu);
    if (sgn(r_sq) == 0) {
        cc.fail(6, "degenerate step: R_nu = 0");
        return rep;
    }
    Rat v_over_pi = Rat(at(ws, nu).q) * r_sq;

    // conditions 2 and 3 bind from the first constructed step
    if (nu <= 3) {
        rep.status[1] = CondStatus::seed_exempt;
        rep.status[2] = CondStatus::seed_exempt;
    } else {
        Rat k(sp.k), ratio = make_rat(at(ws, nu).q, at(ws, nu - 1).q);
        Rat bk2_lo = sch.B_minus(nu) * k * k, bk2_hi = sch.B_plus(nu) * k * k;
        if (bk2_lo <= ratio && ratio <= bk2_hi)
            cc.pass(2);
        else
            cc.fail(2, "ratio " + rat_str(ratio) + " outside [B-k^2, B+k^2]");

        Rat prev_r_sq = r_sq_of(ws, nu - 1);
        Rat lhs = k * k * r_sq;
        if (sch.H_minus(nu) * sch.H_minus(nu) * prev_r_sq <= lhs &&
            lhs <= sch.H_plus_sq(nu) * prev_r_sq)
            cc.pass(3);
        else
            cc.fail(3, "R_nu outside [H- R_{nu-1}/k, H+ R_{nu-1}/k]");
    }
    if (bail()) return rep;

    // condition 6 and the critical-determinant ceiling
    if (sp.alpha < v_over_pi && v_over_pi < sp.omega)
        cc.pass(6);
    else
        cc.fail(6, "q R^2 = " + rat_str(v_over_pi) + " outside (alpha, omega)");
    rep.mahler_ok = v_over_pi * v_over_pi <= make_rat(4, 3);
    if (!rep.mahler_ok)
        rep.failures.push_back("step " + std::to_string(nu) + ": q R^2 above 2/sqrt(3)");
    if (bail()) return rep;

    RatVec2 v_nu = rational_point(at(ws, nu));
    Rat dil = 1 + sp.eps;

    // condition 5 first: its cylinder is the shorter of the two
    if (nu >= 3) {
        Rat rm_sq = r_minus_sq_of(ws, nu);
        Rat dil_m = 1 + sch.eps_minus(nu);
        if (Rat(at(ws, nu - 1).q) <= Rat(enum_limit)) {
            rep.c5_mode = CertMode::enumerated;
            Cylinder cyl{v_nu, Rat(at(ws, nu - 1).q), rm_sq};
            std::vector<IntVec3> expected{{0, 0, 0}, at(ws, nu - 2), at(ws, nu - 1)};
            bool ok = r_sq <= rm_sq &&
                      cylinder_holds_exactly(cyl, dil_m * dil_m, expected, enum_limit);
            if (ok)
                cc.pass(5);
            else
                cc.fail(5, "inner extended cylinder contents differ from the three points");
        } else if (nu >= 4) {
            rep.c5_mode = CertMode::certified;
            // containment in the previous extended cylinder...
            int inka = cmp_sqrt_sum(Rat(1), r_sq, dil_m, rm_sq,
                                    1 + sch.at(nu - 1).eps, r_sq_of(ws, nu - 1));
            // ...which must itself hold exactly the four points
            ConditionReport prev = check_step_conditions(ws, sch, nu - 1, enum_limit);
            bool prev_c4 = prev.status[3] == CondStatus::pass;
            // the one admissible point of the previous cylinder that must stay out
            IntVec3 excl = at(ws, nu - 1) - at(ws, nu - 2);
            Rat excl_dist = dist_sq_to_axis(at(ws, nu), excl);
            bool excluded = excl_dist > dil_m * dil_m * rm_sq;
            bool inside = r_sq <= rm_sq;
            if (inka <= 0 && prev_c4 && excluded && inside)
                cc.pass(5);
            else if (!prev_c4)
                cc.fail(5, "certificate needs condition 4 at the previous step");
            else if (inka > 0)
                cc.fail(5, "inner cylinder not contained in the previous extended cylinder");
            else if (!excluded)
                cc.fail(5, "w_{nu-1} - w_{nu-2} enters the inner extended cylinder");
            else
                cc.fail(5, "w_{nu-1} leaves the inner cylinder");
        } else {
            rep.c5_mode = CertMode::certified;
            cc.fail(5, "seed step exceeds the enumeration limit and cannot be certified");
        }
    }
    if (bail()) return rep;

    // condition 4
    if (Rat(at(ws, nu).q) <= Rat(enum_limit)) {
        rep.c4_mode = CertMode::enumerated;
        Cylinder cyl{v_nu, Rat(at(ws, nu).q), r_sq};
        std::vector<IntVec3> expected{{0, 0, 0}, at(ws, nu - 1), at(ws, nu),
                                      at(ws, nu) - at(ws, nu - 1)};
        bool in_plain = true;
        for (const IntVec3& p : expected) in_plain = in_plain && cylinder_contains(cyl, p);
        if (in_plain && cylinder_holds_exactly(cyl, dil * dil, expected, enum_limit))
            cc.pass(4);
        else
            cc.fail(4, "extended cylinder contents differ from the four required points");
    } else if (nu >= 4) {
        rep.c4_mode = CertMode::certified;
        if (certify_c4(ws, sch, nu, cc)) cc.pass(4);
    } else {
        rep.c4_mode = CertMode::certified;
        cc.fail(4, "seed step exceeds the enumeration limit and cannot be certified");
    }
    return rep;
}

StepRecord make_step_record(const std::vector<IntVec3>& ws, const ParameterSchedule& sch,
                            int nu, const Int& enum_limit) {
    StepRecord r;
    r.nu = nu;
    r.w = at(ws, nu);
    if (nu >= 2) {
        r.r_sq = r_sq_of(ws, nu);
        r.v_over_pi = Rat(at(ws, nu).q) * *r.r_sq;
        r.ratio = make_rat(at(ws, nu).q, at(ws, nu - 1).q);
    }
    if (nu >= 3) r.r_minus_sq = r_minus_sq_of(ws, nu);
    r.cond = check_step_conditions(ws, sch, nu, enum_limit);
    return r;
}

bool VerifyResult::ok() const {
    if (!problems.empty()) return false;
    for (const ConditionReport& r : reports)
        if (!r.all_ok()) return false;
    return true;
}

VerifyResult verify_history(const std::vector<IntVec3>& ws, const ParameterSchedule& sch,
                            const Int& enum_limit) {
    VerifyResult res;
    if (static_cast<int>(ws.size()) > sch.max_nu()) {
        res.problems.push_back("history longer than the schedule");
        return res;
    }
    for (size_t i = 0; i < ws.size(); ++i) {
        if (sgn(ws[i].q) <= 0) res.problems.push_back("nonpositive q at step " + std::to_string(i + 1));
        if (i > 0 && ws[i].q <= ws[i - 1].q)
            res.problems.push_back("q not strictly increasing at step " + std::to_string(i + 1));
    }
    if (!ws.empty() && !(ws[0].q == 1))
        res.problems.push_back("q_1 must be 1");
    if (!res.problems.empty()) return res;
    for (int nu = 1; nu <= static_cast<int>(ws.size()); ++nu) {
        try {
            res.reports.push_back(check_step_conditions(ws, sch, nu, enum_limit));
        } catch (const std::exception& e) {
            ConditionReport rep;
            rep.status[5] = CondStatus::fail;
            rep.failures.push_back("step " + std::to_string(nu) +
                                   " verification error: " + e.what());
            res.reports.push_back(rep);
        }
    }
    return res;
}

}  // namespace dirspec
