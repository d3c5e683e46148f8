#include "hbops/cli_io.hpp"
#include "hbops/error.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>

namespace hbops::io {
namespace {

constexpr int kOk = 0;
constexpr int kVerdictFalse = 1;
constexpr int kUsage = 2;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

AnalysisReport operator_report(const std::string& path, const LinOperator& t) {
    AnalysisReport r;
    r.identity = path;
    r.dim = t.domain().dim();
    return r;
}

int check_hb(const std::string& path, std::size_t net, const std::string& hint_path, AnalysisReport& r) {
    const auto start = std::chrono::steady_clock::now();
    LinOperator t = load_operator(path);
    r = operator_report(path, t);
    std::optional<ExtensionCertificate> hint;
    if (!hint_path.empty()) hint = load_certificate(hint_path);
    HBVerdict v = is_hahn_banach(t, hint ? &*hint : nullptr, net);
    Json data = verdict_to_json(v);
    int code = v.kind == VerdictKind::NotHB ? kVerdictFalse : kOk;
    if (v.kind == VerdictKind::LowerBoundOnly) {
        const bool certifies = v.bound > v.op_norm.approx + 1e-6;
        data["certifies_not_hb"] = certifies;
        if (certifies) code = kVerdictFalse;
    }
    r.verdicts.push_back({"is_hahn_banach", to_string(v.kind), std::move(data)});
    r.seconds = seconds_since(start);
    return code;
}

int construct(const std::string& xp, const std::string& yp, std::size_t k, const std::string& outp, AnalysisReport& r) {
    const auto start = std::chrono::steady_clock::now();
    SpaceHandle x = load_space(xp), y = load_space(yp);
    r.identity = xp + " -> " + yp;
    r.dim = x.dim();
    const std::size_t bound = corollary_max_rank(x, y);
    if (k < 1 || k > bound) {
        r.verdicts.push_back({"construct_rank_k", "no_operator",
                              Json{{"rank", k}, {"max_rank", bound},
                                   {"reason", "the rank of a Hahn-Banach operator is at most min(dim X, dim Y, f(X*) + f(Y) + 1)"}}});
        r.seconds = seconds_since(start);
        return kVerdictFalse;
    }
    Construction c = construct_rank_k(x, y, k);
    Json data{{"rank", k},
              {"max_rank", bound},
              {"m_eff", c.m_eff},
              {"n_eff", c.n_eff},
              {"atoms", c.certificate.atoms.size()},
              {"x0", to_json(c.x0)},
              {"y0", to_json(c.y0)},
              {"matrix", to_json(c.op.matrix())}};
    if (!outp.empty()) {
        write_json(outp, certificate_to_json(c.certificate));
        data["certificate_file"] = outp;
    } else {
        data["certificate"] = certificate_to_json(c.certificate);
    }
    r.verdicts.push_back({"construct_rank_k", "constructed", std::move(data)});
    r.seconds = seconds_since(start);
    return kOk;
}

int verify_cert(const std::string& path, AnalysisReport& r) {
    const auto start = std::chrono::steady_clock::now();
    ExtensionCertificate c = load_certificate(path);
    r = operator_report(path, c.op);
    CertificateCheck chk = verify_certificate(c);
    Json data{{"atoms", c.atoms.size()},
              {"rank", c.rank},
              {"atoms_on_sphere", chk.atoms_on_sphere},
              {"restriction_ok", chk.restriction_ok},
              {"norm_ok", chk.norm_ok},
              {"rank_ok", chk.rank_ok},
              {"norm", chk.norm.exact ? Json(to_string(*chk.norm.exact)) : Json(chk.norm.approx)},
              {"diagnostics", chk.diagnostics}};
    r.verdicts.push_back({"verify_certificate", chk.valid ? "valid" : "invalid", std::move(data)});
    r.seconds = seconds_since(start);
    return chk.valid ? kOk : kVerdictFalse;
}

int theorem1(const std::string& path, AnalysisReport& r) {
    const auto start = std::chrono::steady_clock::now();
    LinOperator t = load_operator(path);
    r = operator_report(path, t);
    Theorem1Report rep = theorem1_verify(t);
    Json pts = Json::array();
    for (const auto& p : rep.points)
        pts.push_back({{"x0", to_json(p.x0)},
                       {"vertex", p.is_vertex},
                       {"d", p.d},
                       {"support_dim", p.support_dim},
                       {"required", p.required},
                       {"pass", p.pass}});
    r.verdicts.push_back({"theorem1_verify", rep.all_pass ? "pass" : "fail",
                          Json{{"rank", rep.rank}, {"scope", rep.scope}, {"points", pts}}});
    r.seconds = seconds_since(start);
    return rep.all_pass ? kOk : kVerdictFalse;
}

void emit(std::ostream& out, bool json, const Json& j) {
    if (json) out << j.dump(2) << '\n';
    else out << to_text(j);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << text;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hahn-Banach operators between finite-dimensional normed spaces", "hbops"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "Print reports as JSON");

    std::string path, xp, yp, outp, hint;
    std::size_t k = 0, net = 32;
    std::function<int()> action;

    auto* analyze = app.add_subcommand("analyze", "Dimension, counts, f and d values of a space");
    analyze->add_option("space", path, "Space JSON")->required();
    analyze->callback([&] {
        action = [&] {
            emit(out, json, report_to_json(analyze_space(load_space(path), path)));
            return kOk;
        };
    });

    auto* dual = app.add_subcommand("dual", "Write the dual space (polar unit ball)");
    dual->add_option("space", path, "Space JSON")->required();
    dual->add_option("-o,--output", outp, "Output file");
    dual->callback([&] {
        action = [&] {
            Json j = space_to_json(load_space(path).polar());
            if (outp.empty()) out << j.dump(2) << '\n';
            else write_json(outp, j);
            return kOk;
        };
    });

    auto* check = app.add_subcommand("check-hb", "Decide whether an operator is Hahn-Banach");
    check->add_option("operator", path, "Operator JSON")->required();
    check->add_option("--net", net, "Net size for smooth domains")->check(CLI::PositiveNumber);
    check->add_option("--cert", hint, "Extension certificate for a smooth codomain");
    check->callback([&] {
        action = [&] {
            AnalysisReport r;
            int code = check_hb(path, net, hint, r);
            emit(out, json, report_to_json(r));
            return code;
        };
    });

    auto* cons = app.add_subcommand("construct", "Build a rank-k Hahn-Banach operator with a certificate");
    cons->add_option("--X", xp, "Domain space JSON")->required();
    cons->add_option("--Y", yp, "Codomain space JSON")->required();
    cons->add_option("--k", k, "Rank")->required();
    cons->add_option("-o,--output", outp, "Certificate output file");
    cons->callback([&] {
        action = [&] {
            AnalysisReport r;
            int code = construct(xp, yp, k, outp, r);
            emit(out, json, report_to_json(r));
            return code;
        };
    });

    auto* verify = app.add_subcommand("verify-cert", "Check an extension certificate");
    verify->add_option("certificate", path, "Certificate JSON")->required();
    verify->callback([&] {
        action = [&] {
            AnalysisReport r;
            int code = verify_cert(path, r);
            emit(out, json, report_to_json(r));
            return code;
        };
    });

    auto* thm = app.add_subcommand("theorem1", "Check the support-set condition at norming points");
    thm->add_option("operator", path, "Operator JSON")->required();
    thm->callback([&] {
        action = [&] {
            AnalysisReport r;
            int code = theorem1(path, r);
            emit(out, json, report_to_json(r));
            return code;
        };
    });

    auto* render = app.add_subcommand("render2d", "Draw a planar unit ball as SVG");
    render->add_option("space", path, "Space JSON")->required();
    render->add_option("-o,--output", outp, "SVG output file");
    render->callback([&] {
        action = [&] {
            std::string svg = render2d_svg(load_space(path));
            if (outp.empty()) out << svg;
            else write_text(outp, svg);
            return kOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        return action();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << '\n';
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
    }
    return kUsage;
}

} // namespace hbops::io
