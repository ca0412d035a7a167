#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dirspec/analysis.hpp"
#include "dirspec/plot.hpp"
#include "dirspec/record.hpp"

namespace {

using namespace dirspec;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedRecord("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::vector<std::pair<int, Rat>> read_phi_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read phi table " + path);
    std::vector<std::pair<int, Rat>> table;
    int nu;
    std::string value;
    while (in >> nu >> value) table.emplace_back(nu, parse_rat(value));
    return table;
}

void print_verify_report(const RunRecord& rec, const VerifyResult& res) {
    for (const std::string& p : res.problems) std::cout << "problem: " << p << "\n";
    for (size_t i = 0; i < res.reports.size(); ++i) {
        const ConditionReport& r = res.reports[i];
        std::cout << "step " << (i + 1) << ":";
        for (int c = 0; c < 6; ++c) {
            std::cout << " C" << (c + 1) << "=" << to_string(r.status[static_cast<size_t>(c)]);
            if (c == 3 && r.c4_mode != CertMode::none) std::cout << "(" << to_string(r.c4_mode) << ")";
            if (c == 4 && r.c5_mode != CertMode::none) std::cout << "(" << to_string(r.c5_mode) << ")";
        }
        std::cout << (r.mahler_ok ? "" : " volume-ceiling=fail") << "\n";
        for (const std::string& f : r.failures) std::cout << "  " << f << "\n";
    }
    (void)rec;
}

int cmd_construct(const RunConfig& cfg, const std::string& out_path) {
    ParameterSchedule sch;
    try {
        sch = schedule_from_config(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    try {
        ConstructionState st = construct_run(sch, cfg.enum_limit);
        RunRecord rec = build_record(cfg, std::move(st));
        write_file(out_path, record_to_json(rec));
        bool all_ok = true;
        for (const StepRecord& s : rec.state.steps) all_ok = all_ok && s.cond.all_ok();
        std::cout << "constructed " << rec.state.max_nu() << " steps -> " << out_path << "\n";
        for (const StepRecord& s : rec.state.steps)
            std::cout << "  nu=" << s.nu << " q=" << s.w.q.get_str()
                      << (s.v_over_pi ? " V/pi~" + rat_decimal(*s.v_over_pi) : "") << "\n";
        return all_ok ? 0 : 1;
    } catch (const SeedError& e) {
        std::cerr << "seeding failed: " << e.what() << "\n";
        return 3;
    } catch (const WindowExhausted& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}

int cmd_verify(const std::string& path, const Int& enum_limit) {
    RunRecord rec;
    try {
        rec = record_from_json(read_file(path));
    } catch (const MalformedRecord& e) {
        std::cerr << "malformed record: " << e.what() << "\n";
        return 2;
    }
    VerifyResult res = verify_record(rec, enum_limit);
    print_verify_report(rec, res);
    if (res.ok()) {
        std::cout << "verification passed (" << res.reports.size() << " steps)\n";
        return 0;
    }
    std::cout << "verification FAILED\n";
    return 1;
}

int cmd_analyze(const std::string& path, const std::string& out_path) {
    RunRecord rec;
    try {
        rec = record_from_json(read_file(path));
    } catch (const MalformedRecord& e) {
        std::cerr << "malformed record: " << e.what() << "\n";
        return 2;
    }
    std::ostringstream out;
    VerifyResult res = verify_record(rec, rec.config.enum_limit);
    if (!res.ok()) out << "warning: record failed verification; figures below are unaudited\n";

    if (rec.state.max_nu() < 2) {
        out << "empty record: no approximants\n";
    } else {
        DirichletEstimate est =
            dirichlet_estimate(rec.state, rec.state.max_nu(), rec.theta.box);
        out << analysis_table(rec.state, est);
        RatioStats rs = ratio_stats(rec.state);
        out << "\nprefix sup of q R(theta)^2 in [" << rat_decimal(est.running_sup.lo, 15) << ", "
            << rat_decimal(est.running_sup.hi, 15) << "] (certified; exact values in the table)\n";
        out << "max ratio ~" << rat_decimal(rs.max_ratio, 3) << ", tail max ~"
            << rat_decimal(rs.m_estimate, 3) << "\n";
        if (rec.config.mode == Mode::theorem2) {
            Rat bound = Rat(1000000) / (rec.config.epsilon * rec.config.epsilon);
            out << "ratio bound 1e6/eps^2 = " << rat_str(bound) << ": "
                << (rs.max_ratio < bound ? "satisfied" : "VIOLATED") << "\n";
        } else {
            bool ok = true;
            for (const auto& [nu, ratio] : rs.ratios)
                if (nu >= 4 && ratio < rec.state.schedule.phi(nu)) ok = false;
            out << "growth targets phi(nu): " << (ok ? "met for all constructed steps" : "MISSED")
                << "\n";
        }
        Rat d_hi = est.running_sup.hi;
        bool p3 = proposition3_check(d_hi, rs.m_estimate);
        out << "ratio/denominator audit (m >= 1/(36 d^2)): "
            << (p3 ? "consistent" : "warning: prefix quantities undershoot") << "\n";
    }
    if (out_path.empty())
        std::cout << out.str();
    else
        write_file(out_path, out.str());
    return 0;
}

int cmd_plot(const std::string& path, int step, const std::string& out_path) {
    RunRecord rec;
    try {
        rec = record_from_json(read_file(path));
    } catch (const MalformedRecord& e) {
        std::cerr << "malformed record: " << e.what() << "\n";
        return 2;
    }
    if (step < 1 || step > rec.state.max_nu()) {
        std::cerr << "step " << step << " out of range 1.." << rec.state.max_nu() << "\n";
        return 2;
    }
    write_file(out_path, render_step_svg(rec.state, step, rec.config.enum_limit));
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact two-dimensional best-approximation constructions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string lambda_s = "1/2", epsilon_s = "1/100", phi_path, out_path = "run.json";
    std::string enum_limit_s = "10000000";
    auto* construct = app.add_subcommand("construct", "build a run and write its record");
    construct->add_option("--mode", [&](const std::vector<std::string>& v) {
        if (v[0] == "theorem1") cfg.mode = Mode::theorem1;
        else if (v[0] == "theorem2") cfg.mode = Mode::theorem2;
        else return false;
        return true;
    }, "theorem1 | theorem2")->expected(1);
    construct->add_option("--lambda", lambda_s, "target value, NUM/DEN");
    construct->add_option("--epsilon", epsilon_s, "accuracy, NUM/DEN (theorem2)");
    construct->add_option("--steps", cfg.steps, "number of steps")->required();
    construct->add_option("--enum-limit", enum_limit_s, "enumeration bound for conditions 4/5");
    construct->add_option("--phi-table", phi_path, "growth table file: lines 'nu value'");
    construct->add_option("--out", out_path, "record output path");

    std::string rec_path;
    std::string v_enum_limit_s = "10000000";
    auto* verify = app.add_subcommand("verify", "re-verify a record independently");
    verify->add_option("record", rec_path, "record path")->required();
    verify->add_option("--enum-limit", v_enum_limit_s, "enumeration bound");

    std::string a_out;
    auto* analyze = app.add_subcommand("analyze", "approximation analytics for a record");
    analyze->add_option("record", rec_path, "record path")->required();
    analyze->add_option("--out", a_out, "write the table here instead of stdout");

    int plot_step = 1;
    std::string p_out = "step.svg";
    auto* plot = app.add_subcommand("plot", "render one step's plane geometry as SVG");
    plot->add_option("record", rec_path, "record path")->required();
    plot->add_option("--step", plot_step, "step number")->required();
    plot->add_option("--out", p_out, "SVG output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) {
            try {
                cfg.lambda = parse_rat(lambda_s);
                cfg.epsilon = parse_rat(epsilon_s);
                cfg.enum_limit = Int(enum_limit_s);
                if (!phi_path.empty()) cfg.phi_table = read_phi_table(phi_path);
            } catch (const std::exception& e) {
                std::cerr << "configuration error: " << e.what() << "\n";
                return 2;
            }
            return cmd_construct(cfg, out_path);
        }
        if (verify->parsed()) return cmd_verify(rec_path, Int(v_enum_limit_s));
        if (analyze->parsed()) return cmd_analyze(rec_path, a_out);
        if (plot->parsed()) return cmd_plot(rec_path, plot_step, p_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
