#include "dirspec/record.hpp"

#include <json.hpp>

namespace dirspec {

using nlohmann::json;

namespace {

json vec_json(const IntVec3& w) {
    return json::array({w.q.get_str(), w.p1.get_str(), w.p2.get_str()});
}

IntVec3 vec_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw MalformedRecord("vector must be [q, p1, p2]");
    try {
        return {Int(j[0].get<std::string>()), Int(j[1].get<std::string>()),
                Int(j[2].get<std::string>())};
    } catch (const std::invalid_argument&) {
        throw MalformedRecord("unparseable integer in vector");
    }
}

Rat rat_from(const json& j) {
    try {
        return parse_rat(j.get<std::string>());
    } catch (const DomainError& e) {
        throw MalformedRecord(e.what());
    }
}

CondStatus status_from(const std::string& s) {
    if (s == "pass") return CondStatus::pass;
    if (s == "fail") return CondStatus::fail;
    if (s == "vacuous") return CondStatus::vacuous;
    if (s == "seed") return CondStatus::seed_exempt;
    throw MalformedRecord("unknown condition status: " + s);
}

CertMode mode_from(const std::string& s) {
    if (s == "none") return CertMode::none;
    if (s == "enumerated") return CertMode::enumerated;
    if (s == "certified") return CertMode::certified;
    throw MalformedRecord("unknown certification mode: " + s);
}

}  // namespace

ParameterSchedule schedule_from_config(const RunConfig& cfg) {
    if (cfg.mode == Mode::theorem2)
        return make_schedule_theorem2(cfg.lambda, cfg.epsilon, cfg.steps);
    return make_schedule_theorem1(cfg.lambda, cfg.phi_table, cfg.steps);
}

RunRecord build_record(const RunConfig& cfg, ConstructionState st) {
    RunRecord rec;
    rec.config = cfg;
    rec.state = std::move(st);
    if (rec.state.max_nu() >= 2) {
        rec.theta = theta_enclosure(rec.state, rec.state.max_nu());
        rec.has_theta = true;
    }
    return rec;
}

std::string record_to_json(const RunRecord& rec) {
    json j;
    j["schema_version"] = rec.schema_version;
    json cfg;
    cfg["mode"] = rec.config.mode == Mode::theorem2 ? "theorem2" : "theorem1";
    cfg["lambda"] = rat_str(rec.config.lambda);
    cfg["epsilon"] = rat_str(rec.config.epsilon);
    cfg["steps"] = rec.config.steps;
    cfg["enum_limit"] = rec.config.enum_limit.get_str();
    json phi = json::array();
    for (const auto& [nu, v] : rec.config.phi_table)
        phi.push_back(json::array({nu, rat_str(v)}));
    cfg["phi_table"] = phi;
    j["config"] = cfg;

    json sched = json::array();
    for (const StepParams& s : rec.state.schedule.rows) {
        json r;
        r["nu"] = s.nu;
        r["eps"] = rat_str(s.eps);
        r["alpha"] = rat_str(s.alpha);
        r["omega"] = rat_str(s.omega);
        r["k"] = s.k.get_str();
        r["case"] = s.case_tag == CaseTag::case1 ? 1 : 2;
        sched.push_back(r);
    }
    j["schedule"] = sched;

    json steps = json::array();
    for (const StepRecord& s : rec.state.steps) {
        json r;
        r["nu"] = s.nu;
        r["w"] = vec_json(s.w);
        if (s.r_sq) r["R_sq"] = rat_str(*s.r_sq);
        if (s.r_minus_sq) r["R_minus_sq"] = rat_str(*s.r_minus_sq);
        if (s.v_over_pi) r["V_over_pi"] = rat_str(*s.v_over_pi);
        if (s.ratio) r["ratio"] = rat_str(*s.ratio);
        if (s.lambda_row) r["lambda_row"] = rat_str(*s.lambda_row);
        if (s.row_m) r["row_m"] = s.row_m->get_str();
        if (s.col_l) r["col_l"] = s.col_l->get_str();
        json cond = json::array();
        for (CondStatus c : s.cond.status) cond.push_back(to_string(c));
        r["cond"] = cond;
        r["c4_mode"] = to_string(s.cond.c4_mode);
        r["c5_mode"] = to_string(s.cond.c5_mode);
        r["mahler_ok"] = s.cond.mahler_ok;
        steps.push_back(r);
    }
    j["steps"] = steps;

    if (rec.has_theta) {
        json t;
        t["nu"] = rec.theta.nu;
        t["center"] = json::array({rat_str(rec.theta.center.v1), rat_str(rec.theta.center.v2)});
        t["radius"] = rat_str(rec.theta.radius);
        t["box"] = json::array(
            {json::array({rat_str(rec.theta.box.t1.lo), rat_str(rec.theta.box.t1.hi)}),
             json::array({rat_str(rec.theta.box.t2.lo), rat_str(rec.theta.box.t2.hi)})});
        j["theta"] = t;
    }
    return j.dump(2) + "\n";
}

RunRecord record_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedRecord(std::string("invalid JSON: ") + e.what());
    }
    try {
        RunRecord rec;
        rec.schema_version = j.at("schema_version").get<int>();
        if (rec.schema_version != 1)
            throw MalformedRecord("unsupported schema version");
        const json& cfg = j.at("config");
        std::string mode = cfg.at("mode").get<std::string>();
        if (mode == "theorem2")
            rec.config.mode = Mode::theorem2;
        else if (mode == "theorem1")
            rec.config.mode = Mode::theorem1;
        else
            throw MalformedRecord("unknown mode: " + mode);
        rec.config.lambda = rat_from(cfg.at("lambda"));
        rec.config.epsilon = rat_from(cfg.at("epsilon"));
        rec.config.steps = cfg.at("steps").get<int>();
        rec.config.enum_limit = Int(cfg.at("enum_limit").get<std::string>());
        for (const json& p : cfg.at("phi_table"))
            rec.config.phi_table.emplace_back(p.at(0).get<int>(), rat_from(p.at(1)));

        rec.state.schedule = schedule_from_config(rec.config);
        // cross-check the stored schedule against the re-derived one
        const json& sched = j.at("schedule");
        if (sched.size() != rec.state.schedule.rows.size())
            throw MalformedRecord("schedule length mismatch");
        for (size_t i = 0; i < sched.size(); ++i) {
            const StepParams& s = rec.state.schedule.rows[i];
            const json& r = sched[i];
            if (r.at("nu").get<int>() != s.nu || rat_from(r.at("eps")) != s.eps ||
                rat_from(r.at("alpha")) != s.alpha || rat_from(r.at("omega")) != s.omega ||
                Int(r.at("k").get<std::string>()) != s.k)
                throw MalformedRecord("schedule row disagrees with the configuration");
        }

        for (const json& r : j.at("steps")) {
            StepRecord s;
            s.nu = r.at("nu").get<int>();
            s.w = vec_from(r.at("w"));
            if (r.contains("R_sq")) s.r_sq = rat_from(r.at("R_sq"));
            if (r.contains("R_minus_sq")) s.r_minus_sq = rat_from(r.at("R_minus_sq"));
            if (r.contains("V_over_pi")) s.v_over_pi = rat_from(r.at("V_over_pi"));
            if (r.contains("ratio")) s.ratio = rat_from(r.at("ratio"));
            if (r.contains("lambda_row")) s.lambda_row = rat_from(r.at("lambda_row"));
            if (r.contains("row_m")) s.row_m = Int(r.at("row_m").get<std::string>());
            if (r.contains("col_l")) s.col_l = Int(r.at("col_l").get<std::string>());
            const json& cond = r.at("cond");
            if (cond.size() != 6) throw MalformedRecord("condition vector must have 6 entries");
            for (size_t i = 0; i < 6; ++i)
                s.cond.status[i] = status_from(cond[i].get<std::string>());
            s.cond.c4_mode = mode_from(r.at("c4_mode").get<std::string>());
            s.cond.c5_mode = mode_from(r.at("c5_mode").get<std::string>());
            s.cond.mahler_ok = r.at("mahler_ok").get<bool>();
            rec.state.steps.push_back(std::move(s));
        }
        if (static_cast<int>(rec.state.steps.size()) != rec.config.steps)
            throw MalformedRecord("step count disagrees with the configuration");
        for (int nu = 1; nu <= rec.state.max_nu(); ++nu)
            if (rec.state.steps[static_cast<size_t>(nu - 1)].nu != nu)
                throw MalformedRecord("step numbering broken");

        if (j.contains("theta")) {
            const json& t = j.at("theta");
            rec.theta.nu = t.at("nu").get<int>();
            rec.theta.center = {rat_from(t.at("center").at(0)), rat_from(t.at("center").at(1))};
            rec.theta.radius = rat_from(t.at("radius"));
            const json& b = t.at("box");
            rec.theta.box = {RatInterval(rat_from(b.at(0).at(0)), rat_from(b.at(0).at(1))),
                             RatInterval(rat_from(b.at(1).at(0)), rat_from(b.at(1).at(1)))};
            rec.has_theta = true;
        } else if (rec.state.max_nu() >= 2) {
            throw MalformedRecord("record with steps but no theta enclosure");
        }
        return rec;
    } catch (const json::exception& e) {
        throw MalformedRecord(std::string("record field error: ") + e.what());
    } catch (const ConfigError& e) {
        throw MalformedRecord(std::string("configuration invalid: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw MalformedRecord(std::string("unparseable number: ") + e.what());
    }
}

VerifyResult verify_record(const RunRecord& rec, const Int& enum_limit) {
    std::vector<IntVec3> ws = rec.state.vectors();
    VerifyResult res = verify_history(ws, rec.state.schedule, enum_limit);
    if (!res.problems.empty()) return res;

    // stored derived values must match recomputation from the vectors
    for (int nu = 1; nu <= rec.state.max_nu(); ++nu) {
        const StepRecord& s = rec.state.steps[static_cast<size_t>(nu - 1)];
        if (nu >= 2) {
            Rat r_sq = r_sq_of(ws, nu);
            if (!s.r_sq || *s.r_sq != r_sq)
                res.problems.push_back("stored R_sq disagrees at step " + std::to_string(nu));
            if (!s.v_over_pi || *s.v_over_pi != Rat(ws[static_cast<size_t>(nu - 1)].q) * r_sq)
                res.problems.push_back("stored V_over_pi disagrees at step " + std::to_string(nu));
            if (!s.ratio || *s.ratio != make_rat(ws[static_cast<size_t>(nu - 1)].q,
                                                 ws[static_cast<size_t>(nu - 2)].q))
                res.problems.push_back("stored ratio disagrees at step " + std::to_string(nu));
        }
        if (nu >= 3) {
            if (!s.r_minus_sq || *s.r_minus_sq != r_minus_sq_of(ws, nu))
                res.problems.push_back("stored R_minus_sq disagrees at step " + std::to_string(nu));
        }
    }
    if (rec.has_theta) {
        ThetaEnclosure fresh = theta_enclosure(rec.state, rec.theta.nu);
        if (!(fresh.center == rec.theta.center) || fresh.radius != rec.theta.radius)
            res.problems.push_back("stored theta enclosure disagrees with recomputation");
    }
    return res;
}

}  // namespace dirspec
