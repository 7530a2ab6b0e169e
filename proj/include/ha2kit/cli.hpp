#ifndef HA2KIT_CLI_HPP
#define HA2KIT_CLI_HPP

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ha2kit/prolong.hpp"
#include "ha2kit/specfile.hpp"

namespace ha2kit::cli {

// exit codes: 0 all checks pass, 1 an axiom check failed, 2 usage/input error
constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_error = 2;

inline void render_text(const VerificationReport& rep, std::ostream& os) {
    os << "== " << rep.title << " ==\n";
    for (const auto& c : rep.checks)
        os << (c.pass ? "  ok   " : "  FAIL ") << c.equation_id << " " << c.indices << "  residual: " << c.residual
           << "\n";
    os << (rep.pass() ? "verdict: pass" : "verdict: fail") << "  (" << rep.checks.size() << " checks, "
       << rep.failure_count() << " failures, " << rep.elapsed_ms << " ms)\n";
}

inline specfile::json report_json(const VerificationReport& rep) {
    specfile::json j;
    j["title"] = rep.title;
    j["verdict"] = rep.pass() ? "pass" : "fail";
    j["elapsed_ms"] = rep.elapsed_ms;
    j["checks"] = specfile::json::array();
    for (const auto& c : rep.checks) {
        specfile::json cj;
        cj["equation_id"] = c.equation_id;
        cj["indices"] = c.indices;
        cj["residual"] = c.residual;
        cj["pass"] = c.pass;
        j["checks"].push_back(cj);
    }
    return j;
}

inline void render(const std::vector<VerificationReport>& reports, const std::string& format, std::ostream& os) {
    if (format == "json") {
        specfile::json arr = specfile::json::array();
        for (const auto& r : reports) arr.push_back(report_json(r));
        os << arr.dump(2) << "\n";
    } else {
        for (const auto& r : reports) render_text(r, os);
    }
}

inline VerificationReport validation_report(const std::string& what) {
    VerificationReport rep;
    rep.title = "invariant validation";
    rep.add("invariants", "(" + what + ")", "0", true);
    return rep;
}

inline int cmd_check(const std::string& path, const std::string& level, const std::string& format, size_t law_trials,
                     uint64_t seed, std::ostream& os, std::ostream& err) {
    specfile::Loaded in = specfile::load_file(path);
    std::vector<VerificationReport> reports;
    switch (in.kind) {
        case specfile::Kind::algebroid1: {
            const Algebroid1Data& A = *in.alg1;
            if (level == "skew") {
                reports.push_back(validation_report("skew bracket, shapes"));
            } else {
                reports.push_back(check_al1(A));
                if (level == "lie") reports.push_back(check_jacobi(A));
            }
            break;
        }
        case specfile::Kind::ha2: {
            const HA2Data& H = *in.ha2;
            if (level == "skew") {
                reports.push_back(validation_report("declared symmetries, shapes"));
            } else {
                reports.push_back(check_al2(H));
                if (level == "lie") {
                    reports.push_back(check_lie2(H));
                    reports.push_back(check_lie2_brackets(H));
                }
            }
            if (law_trials) reports.push_back(tensor_law_suite(H, law_trials, seed));
            break;
        }
        case specfile::Kind::point_ha:
            reports.push_back(check_point_lie(*in.point));
            break;
        case specfile::Kind::ruth2: {
            reports.push_back(check_ruth(in.ruth->ruth));
            break;
        }
        case specfile::Kind::connection:
            reports.push_back(validation_report("shapes"));
            break;
    }
    render(reports, format, os);
    for (const auto& r : reports)
        if (!r.pass()) return exit_fail;
    (void)err;
    return exit_pass;
}

inline int cmd_prolong(const std::string& in_path, const std::string& out_path, std::ostream& err) {
    specfile::Loaded in = specfile::load_file(in_path);
    if (in.kind != specfile::Kind::algebroid1)
        throw specfile::SpecFileError("prolong expects an algebroid1 file, got " + specfile::kind_name(in.kind));
    if (!(check_al1(*in.alg1).pass()))
        err << "warning: input is not almost Lie; the prolongation data is still produced\n";
    HA2Data P = prolong2(*in.alg1);
    specfile::write_file(out_path, specfile::to_json(P));
    return exit_pass;
}

inline int cmd_to_ruth(const std::string& ha_path, const std::string& conn_path, const std::string& out_path,
                       std::ostream& err) {
    specfile::Loaded in = specfile::load_file(ha_path);
    if (in.kind != specfile::Kind::ha2)
        throw specfile::SpecFileError("to-ruth expects a ha2 file, got " + specfile::kind_name(in.kind));
    specfile::Loaded cn = specfile::load_file(conn_path);
    if (cn.kind != specfile::Kind::connection)
        throw specfile::SpecFileError("to-ruth expects a connection file, got " + specfile::kind_name(cn.kind));
    const HA2Data& H = *in.ha2;
    if (cn.conn->base_dim != H.base_dim || cn.conn->rank != H.rank_A)
        throw specfile::SpecFileError("connection dimensions do not match the ha2 data");
    if (!(check_al2(H).pass() && check_lie2(H).pass()))
        err << "warning: input does not pass the Lie checks; the induced data need not be a representation\n";
    RuthFromHA out = ha_to_ruth(H, *cn.conn);
    specfile::write_file(out_path, specfile::to_json(out.ruth, &out.to_adjoint));
    return exit_pass;
}

inline int cmd_from_ruth(const std::string& ruth_path, const std::string& conn_path, const std::string& out_path) {
    specfile::Loaded in = specfile::load_file(ruth_path);
    if (in.kind != specfile::Kind::ruth2)
        throw specfile::SpecFileError("from-ruth expects a ruth2 file, got " + specfile::kind_name(in.kind));
    specfile::Loaded cn = specfile::load_file(conn_path);
    if (cn.kind != specfile::Kind::connection)
        throw specfile::SpecFileError("from-ruth expects a connection file, got " + specfile::kind_name(cn.kind));
    if (!in.ruth->morphism)
        throw specfile::SpecFileError("from-ruth needs the morphism block of the ruth2 file");
    HA2Data H = ruth_to_ha(in.ruth->ruth, *in.ruth->morphism, *cn.conn);
    specfile::write_file(out_path, specfile::to_json(H));
    return exit_pass;
}

inline int cmd_lift(const std::string& path, int alpha, const std::string& section_expr, std::ostream& os) {
    specfile::Loaded in = specfile::load_file(path);
    if (in.kind != specfile::Kind::ha2)
        throw specfile::SpecFileError("lift expects a ha2 file, got " + specfile::kind_name(in.kind));
    const HA2Data& H = *in.ha2;
    auto base = specfile::detail::base_names(H.base_dim);
    if (section_expr.empty()) {
        for (size_t k = 0; k < H.rank_A; ++k)
            os << "e" << (k + 1) << "^<" << alpha << "> = " << lift(H, H.frame_A(k), alpha).to_string() << "\n";
        return exit_pass;
    }
    Section s;
    std::stringstream ss(section_expr);
    std::string item;
    while (std::getline(ss, item, ',')) s.push_back(poly_parse(item, base));
    if (s.size() != H.rank_A)
        throw specfile::SpecFileError("section needs " + std::to_string(H.rank_A) + " comma-separated components");
    os << "s^<" << alpha << "> = " << lift(H, s, alpha).to_string() << "\n";
    return exit_pass;
}

inline int cmd_r2(const std::string& path, std::ostream& os) {
    specfile::Loaded in = specfile::load_file(path);
    if (in.kind != specfile::Kind::ha2)
        throw specfile::SpecFileError("r2 expects a ha2 file, got " + specfile::kind_name(in.kind));
    R2Map R = r2_map(*in.ha2);
    os << "R2: (x, y, dy) -> (x, y, z) with\n";
    for (size_t mu = 0; mu < R.z_images.size(); ++mu)
        os << "  z" << (mu + 1) << " = " << R.z_images[mu].to_string(R.domain.names()) << "\n";
    return exit_pass;
}

inline int run(const std::vector<std::string>& args, std::ostream& os, std::ostream& err) {
    CLI::App app{"exact symbolic checks for order-two higher algebroids"};
    app.require_subcommand(1);

    std::string file, conn_file, out_file = "out.json";
    std::string level = "lie", format = "text", section;
    size_t law_trials = 0;
    uint64_t seed = 1;
    int alpha = 0;

    auto* check = app.add_subcommand("check", "run the axiom checks for a spec file");
    check->add_option("file", file)->required();
    check->add_option("--level", level)->check(CLI::IsMember({"skew", "al", "lie"}));
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    check->add_option("--laws", law_trials, "also run the tensor-law suite with this many trials");
    check->add_option("--seed", seed, "seed for the property suites");

    auto* check_ruth_cmd = app.add_subcommand("check-ruth", "alias of check for ruth2 files");
    check_ruth_cmd->add_option("file", file)->required();
    check_ruth_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* point_check = app.add_subcommand("point-check", "classification checks for a point HA file");
    point_check->add_option("file", file)->required();
    point_check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* prolong = app.add_subcommand("prolong", "write the order-two prolongation of an algebroid");
    prolong->add_option("file", file)->required();
    prolong->add_option("-o,--out", out_file)->required();

    auto* to_ruth = app.add_subcommand("to-ruth", "induced 2-term representation of a Lie HA");
    to_ruth->add_option("file", file)->required();
    to_ruth->add_option("connection", conn_file)->required();
    to_ruth->add_option("-o,--out", out_file)->required();

    auto* from_ruth = app.add_subcommand("from-ruth", "rebuild the HA from a representation file");
    from_ruth->add_option("file", file)->required();
    from_ruth->add_option("connection", conn_file)->required();
    from_ruth->add_option("-o,--out", out_file)->required();

    auto* lift_cmd = app.add_subcommand("lift", "print algebroid lifts of a ha2 file");
    lift_cmd->add_option("file", file)->required();
    lift_cmd->add_option("--alpha", alpha)->check(CLI::IsMember({0, -1, -2}))->required();
    lift_cmd->add_option("--section", section, "comma-separated component expressions");

    auto* r2_cmd = app.add_subcommand("r2", "print the canonical map from the prolongation chart");
    r2_cmd->add_option("file", file)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        os << app.help();
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    try {
        if (check->parsed()) return cmd_check(file, level, format, law_trials, seed, os, err);
        if (check_ruth_cmd->parsed()) return cmd_check(file, "lie", format, 0, seed, os, err);
        if (point_check->parsed()) return cmd_check(file, "lie", format, 0, seed, os, err);
        if (prolong->parsed()) return cmd_prolong(file, out_file, err);
        if (to_ruth->parsed()) return cmd_to_ruth(file, conn_file, out_file, err);
        if (from_ruth->parsed()) return cmd_from_ruth(file, conn_file, out_file);
        if (lift_cmd->parsed()) return cmd_lift(file, alpha, section, os);
        if (r2_cmd->parsed()) return cmd_r2(file, os);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    err << "error: no subcommand\n";
    return exit_error;
}

}  // namespace ha2kit::cli

#endif
