#include "tjurina/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tjurina/combinatorics.hpp"
#include "tjurina/curve.hpp"
#include "tjurina/errors.hpp"
#include "tjurina/expr.hpp"
#include "tjurina/invariants.hpp"
#include "tjurina/newton_puiseux.hpp"
#include "tjurina/value_sets.hpp"
#include "tjurina/verification.hpp"

namespace tjurina {

namespace {

using Json = nlohmann::ordered_json;

std::string js(long v) { return std::to_string(v); }

Json js_vec(const std::vector<long>& v) {
    Json a = Json::array();
    for (long x : v) a.push_back(js(x));
    return a;
}

Json js_points(const std::vector<ValVec>& pts) {
    Json a = Json::array();
    for (const ValVec& p : pts) a.push_back(js_vec(p));
    return a;
}

struct CurveInput {
    Curve curve;
    AnalysisOptions opt;
    bool verify = false;
    std::vector<long> order;  // 1-based branch permutation, empty = keep
};

MPoly parse_poly_flex(const std::string& text) {
    try {
        return parse_polynomial(text, {"x", "y"});
    } catch (const unknown_variable&) {
        return parse_polynomial(text, {"X", "Y"});
    }
}

MPoly product_equation(const Curve& c) {
    if (c.poly) return *c.poly;
    if (c.factors.empty()) throw missing_factor("no defining equation available");
    MPoly f = c.factors[0];
    for (size_t j = 1; j < c.factors.size(); ++j) f *= c.factors[j];
    return f;
}

/* Plane curves given by branches: try to recover one defining factor per
 * branch so the equation-based formulas and checks become available. Inexact
 * branch data makes this impossible; that is not an error. */
void attach_factors(Curve& c) {
    if (!c.plane()) return;
    std::vector<MPoly> fs;
    try {
        for (const Branch& b : c.branches) fs.push_back(reconstruct_factor(b));
    } catch (const math_error&) {
        return;
    }
    c.factors = std::move(fs);
    if (!c.poly) c.poly = product_equation(c);
}

long json_long(const Json& v, const char* what) {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_string()) {
        try {
            return std::stol(v.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw input_error(std::string(what) + " must be an integer");
}

CurveInput input_from_json(const Json& j, long cli_trunc) {
    if (!j.is_object()) throw input_error("input document must be a JSON object");
    bool has_poly = j.contains("poly"), has_branches = j.contains("branches");
    if (has_poly == has_branches)
        throw input_error("provide exactly one of \"poly\" or \"branches\"");

    CurveInput in;
    long trunc = cli_trunc;
    if (trunc <= 0 && j.contains("trunc")) trunc = json_long(j["trunc"], "trunc");
    if (j.contains("box_slack")) in.opt.box_slack = json_long(j["box_slack"], "box_slack");
    if (j.contains("verify")) {
        if (!j["verify"].is_boolean()) throw input_error("verify must be a boolean");
        in.verify = j["verify"].get<bool>();
    }
    if (j.contains("order")) {
        if (!j["order"].is_array()) throw input_error("order must be an array of branch numbers");
        for (const Json& v : j["order"]) in.order.push_back(json_long(v, "order entry"));
    }

    if (has_poly) {
        if (!j["poly"].is_string()) throw input_error("\"poly\" must be a string");
        MPoly f = parse_poly_flex(j["poly"].get<std::string>());
        long N = trunc > 0 ? trunc : 128;
        in.curve.nvars = 2;
        in.curve.branches = puiseux_branches(f, N);
        in.curve.poly = f;
        attach_factors(in.curve);
    } else {
        const Json& arr = j["branches"];
        if (!arr.is_array() || arr.empty())
            throw input_error("\"branches\" must be a non-empty array");
        int nvars = -1;
        for (const Json& el : arr) {
            const Json* coords = &el;
            if (el.is_object()) {
                if (!el.contains("coords")) throw input_error("branch object needs \"coords\"");
                coords = &el["coords"];
            }
            if (!coords->is_array() || coords->empty())
                throw input_error("branch coords must be a non-empty array of series");
            Branch b;
            for (const Json& s : *coords) {
                if (!s.is_string()) throw input_error("branch coordinate must be a series string");
                Series ser = parse_series(s.get<std::string>());
                if (trunc > 0) ser = ser.truncated(trunc);
                b.coords.push_back(ser);
            }
            if (nvars < 0) nvars = b.nvars();
            if (b.nvars() != nvars)
                throw input_error("all branches must have the same number of coordinates");
            in.curve.branches.push_back(std::move(b));
        }
        in.curve.nvars = nvars;
        validate_branches(in.curve.branches);
        attach_factors(in.curve);
    }
    for (size_t i = 0; i < in.curve.branches.size(); ++i)
        in.curve.branches[i].label = "b" + std::to_string(i + 1);
    return in;
}

void apply_order(Curve& c, const std::vector<long>& ord) {
    size_t r = c.branches.size();
    std::vector<long> sorted = ord;
    std::sort(sorted.begin(), sorted.end());
    std::vector<long> expect(r);
    std::iota(expect.begin(), expect.end(), 1);
    if (sorted != expect)
        throw input_error("order must be a permutation of 1.." + std::to_string(r));
    std::vector<Branch> nb;
    std::vector<MPoly> nf;
    for (long k : ord) {
        nb.push_back(c.branches[static_cast<size_t>(k - 1)]);
        if (c.factors.size() == r) nf.push_back(c.factors[static_cast<size_t>(k - 1)]);
    }
    c.branches = std::move(nb);
    if (!nf.empty()) c.factors = std::move(nf);
}

std::vector<CheckResult> run_verification(const Curve& c, const InvariantReport& rep) {
    std::vector<CheckResult> out;
    bool have_f = c.poly.has_value() || !c.factors.empty();
    if (!c.plane() || !have_f) {
        out.push_back({"equation_checks", true,
                       "skipped: no implicit equations available for this input"});
        return out;
    }
    if (!c.factors.empty()) {
        Curve cc = first_coordinate_transversal(c) ? c : make_transversal_plane(c);
        out.push_back(piene_check(cc));
    } else {
        out.push_back({"piene_order_law", true, "skipped: no per-branch factors"});
    }
    out.push_back(pol_identity_check(c));

    MPoly f = product_equation(c);
    CheckResult tors{"defining_differential_torsion",
                     torsion_test(c, {f.partial(0), f.partial(1)}, {f}), ""};
    if (!tors.passed) tors.details = "determinant of d(equation) not zero on every branch";
    out.push_back(tors);

    long direct = tjurina_direct(f);
    out.push_back({"direct_colength_agreement", direct == rep.tjurina_value,
                   "colength " + js(direct) + " vs formula " + js(rep.tjurina_value)});
    return out;
}

Json set_json(const ValueSet& s) {
    Json j;
    j["box"] = js_vec(s.box);
    j["conductor"] = js_vec(s.conductor());
    Json axes = Json::array();
    for (size_t i = 0; i < s.box.size(); ++i) axes.push_back(js_vec(s.axis(static_cast<int>(i))));
    j["axes"] = axes;
    return j;
}

Json maximals_json(const Maximals& m) {
    Json j;
    j["M"] = js_points(m.M);
    j["RM"] = js_points(m.RM);
    j["AM"] = js_points(m.AM);
    return j;
}

Json checks_json(const std::vector<NamedCheck>& checks) {
    Json a = Json::array();
    for (const NamedCheck& c : checks) {
        Json e;
        e["name"] = c.name;
        e["passed"] = c.pass;
        e["details"] = c.details;
        a.push_back(e);
    }
    return a;
}

Json render_json(const Curve& c, const InvariantReport& rep,
                 const std::vector<CheckResult>& verify, bool verified) {
    Json j;
    j["r"] = js(rep.r);
    j["plane"] = rep.plane;
    j["ci_conditional"] = rep.ci_conditional;

    Json bs = Json::array();
    for (size_t i = 0; i < rep.branches.size(); ++i) {
        const BranchSummary& b = rep.branches[i];
        Json bj;
        bj["label"] = c.branches[i].label;
        bj["multiplicity"] = js(c.branches[i].mult());
        bj["semigroup"] = js_vec(b.semigroup);
        bj["differential_values"] = js_vec(b.diff_values);
        bj["delta"] = js(b.delta);
        bj["conductor"] = js(b.conductor);
        bj["nonexact_count"] = js(b.nonexact);
        bj["tjurina"] = js(b.tjurina);
        bs.push_back(bj);
    }
    j["branches"] = bs;

    if (rep.r > 1) {
        Json im = Json::array();
        for (const auto& row : rep.intersection) im.push_back(js_vec(row));
        j["intersection"] = im;
    }
    j["gamma"] = set_json(rep.gamma);
    j["lambda"] = set_json(rep.lambda);
    if (rep.r > 1) {
        j["gamma_maximals"] = maximals_json(maximal_points(rep.gamma));
        j["lambda_maximals"] = maximals_json(rep.lambda_maximals);
    }
    j["theta"] = js_vec(rep.theta_values);
    j["delta"] = js(rep.delta_value);
    if (rep.delta_plane_value >= 0) j["delta_plane"] = js(rep.delta_plane_value);
    j["tjurina"] = js(rep.tjurina_value);
    if (rep.tjurina_plane_value >= 0) j["tjurina_plane"] = js(rep.tjurina_plane_value);
    if (rep.tjurina_special_value >= 0) j["tjurina_special"] = js(rep.tjurina_special_value);
    j["consistency_checks"] = checks_json(rep.checks);
    if (verified) {
        Json va = Json::array();
        for (const CheckResult& r2 : verify) {
            Json e;
            e["name"] = r2.name;
            e["passed"] = r2.passed;
            e["details"] = r2.details;
            va.push_back(e);
        }
        j["verification"] = va;
    }
    return j;
}

std::vector<long> minimal_generators(const std::vector<long>& sg) {
    std::set<long> s(sg.begin(), sg.end());
    std::vector<long> gens;
    for (long e : sg) {
        if (e <= 0) continue;
        bool sum = false;
        for (long a : sg) {
            if (a <= 0) continue;
            if (a >= e) break;
            if (s.count(e - a)) {
                sum = true;
                break;
            }
        }
        if (!sum) gens.push_back(e);
    }
    return gens;
}

std::string points_line(const std::vector<ValVec>& pts) {
    std::ostringstream os;
    for (const ValVec& p : pts) os << " " << vv_str(p);
    return os.str();
}

void render_text(std::ostream& out, const Curve& c, const InvariantReport& rep,
                 const std::vector<CheckResult>& verify, bool verified) {
    out << "curve with " << rep.r << (rep.r == 1 ? " branch" : " branches")
        << (rep.plane ? " (plane)" : "") << "\n";
    for (size_t i = 0; i < rep.branches.size(); ++i) {
        const BranchSummary& b = rep.branches[i];
        out << "  " << c.branches[i].label << ": multiplicity " << c.branches[i].mult()
            << ", semigroup <";
        std::vector<long> gens = minimal_generators(b.semigroup);
        for (size_t k = 0; k < gens.size(); ++k) out << (k ? "," : "") << gens[k];
        out << ">, delta " << b.delta << ", conductor " << b.conductor << ", tjurina "
            << b.tjurina << "\n";
    }
    if (rep.r > 1) {
        out << "intersection multiplicities:";
        for (int i = 0; i < rep.r; ++i)
            for (int k = i + 1; k < rep.r; ++k)
                out << "  I(" << i + 1 << "," << k + 1
                    << ") = " << rep.intersection[static_cast<size_t>(i)][static_cast<size_t>(k)];
        out << "\n";
    }
    out << "semigroup conductor: " << vv_str(rep.gamma.conductor()) << "\n";
    out << "delta: " << rep.delta_value;
    if (rep.delta_plane_value >= 0) out << "  (gaps+intersections: " << rep.delta_plane_value << ")";
    out << "\n";
    out << "theta: " << vv_str(rep.theta_values) << "\n";
    out << "tjurina: " << rep.tjurina_value;
    if (rep.ci_conditional) out << "  (assumes a complete intersection)";
    out << "\n";
    if (rep.tjurina_plane_value >= 0) out << "  plane formula: " << rep.tjurina_plane_value << "\n";
    if (rep.tjurina_special_value >= 0)
        out << "  " << (rep.r == 2 ? "two" : "three")
            << "-branch formula: " << rep.tjurina_special_value << "\n";
    if (rep.r > 1) {
        out << "differential maximal points:\n";
        out << "  M  (" << rep.lambda_maximals.M.size() << "):" << points_line(rep.lambda_maximals.M)
            << "\n";
        if (rep.r > 2) {
            out << "  RM (" << rep.lambda_maximals.RM.size()
                << "):" << points_line(rep.lambda_maximals.RM) << "\n";
            out << "  AM (" << rep.lambda_maximals.AM.size()
                << "):" << points_line(rep.lambda_maximals.AM) << "\n";
        }
    }
    size_t ok = 0;
    for (const NamedCheck& nc : rep.checks) ok += nc.pass ? 1u : 0u;
    out << "consistency checks: " << ok << "/" << rep.checks.size() << " passed\n";
    for (const NamedCheck& nc : rep.checks)
        if (!nc.pass) out << "  FAILED " << nc.name << ": " << nc.details << "\n";
    if (verified) {
        size_t vk = 0;
        for (const CheckResult& r2 : verify) vk += r2.passed ? 1u : 0u;
        out << "verification: " << vk << "/" << verify.size() << " passed\n";
        for (const CheckResult& r2 : verify)
            if (!r2.passed) out << "  FAILED " << r2.name << ": " << r2.details << "\n";
    }
}

int compute_cmd(const std::string& path, bool json_out, bool verify_flag, long trunc, long slack,
                const std::string& order_str, std::ostream& out, std::ostream& err) {
    std::string stage = "input";
    try {
        std::ifstream file(path);
        if (!file) throw input_error("cannot open input file: " + path);
        Json j;
        try {
            j = Json::parse(file);
        } catch (const Json::parse_error& e) {
            throw input_error(std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) throw input_error("input document must be a JSON object");
        if (j.contains("poly") == j.contains("branches"))
            throw input_error("provide exactly one of \"poly\" or \"branches\"");

        stage = "expansion";
        CurveInput in = input_from_json(j, trunc);
        if (slack >= 0) in.opt.box_slack = slack;
        if (verify_flag) in.verify = true;
        if (!order_str.empty()) {
            in.order.clear();
            std::stringstream ss(order_str);
            std::string tok;
            while (std::getline(ss, tok, ','))
                in.order.push_back(json_long(Json(tok), "order entry"));
        }
        if (!in.order.empty()) apply_order(in.curve, in.order);

        stage = "analysis";
        InvariantReport rep = analyze(in.curve, in.opt);

        stage = "verification";
        std::vector<CheckResult> checks;
        if (in.verify) checks = run_verification(in.curve, rep);

        stage = "output";
        if (json_out)
            out << render_json(in.curve, rep, checks, in.verify).dump(2) << "\n";
        else
            render_text(out, in.curve, rep, checks, in.verify);

        bool ok = rep.all_checks_pass();
        for (const CheckResult& r2 : checks) ok = ok && r2.passed;
        if (!ok) {
            err << "cross-checks failed; see report\n";
            return 4;
        }
        return 0;
    } catch (const input_error& e) {
        err << "error in " << stage << ": " << e.what() << "\n";
        return 2;
    } catch (const math_error& e) {
        err << "error in " << stage << ": " << e.what() << "\n";
        return 3;
    }
}

Curve corpus_plane(const std::vector<std::pair<const char*, const char*>>& bs,
                   const std::vector<const char*>& fs) {
    Curve c;
    c.nvars = 2;
    int k = 1;
    for (const auto& [x, y] : bs) {
        Branch b;
        b.coords = {parse_series(x), parse_series(y)};
        b.label = "b" + std::to_string(k++);
        c.branches.push_back(b);
    }
    for (const char* f : fs) c.factors.push_back(parse_polynomial(f, {"X", "Y"}));
    return c;
}

int selftest_cmd(std::ostream& out) {
    struct Row {
        std::string name;
        Curve curve;
        long expect;
    };
    std::vector<Row> rows;
    rows.push_back({"smooth line", corpus_plane({{"t", "t^2"}}, {"Y - X^2"}), 0});
    rows.push_back({"node", corpus_plane({{"t", "0"}, {"0", "t"}}, {"Y", "X"}), 1});
    rows.push_back({"cusp", corpus_plane({{"t^2", "t^3"}}, {"Y^2 - X^3"}), 2});
    rows.push_back(
        {"tacnode", corpus_plane({{"t", "t^2"}, {"t", "-t^2"}}, {"Y - X^2", "Y + X^2"}), 3});
    rows.push_back({"triple point",
                    corpus_plane({{"t", "0"}, {"0", "t"}, {"t", "-t"}}, {"Y", "X", "X + Y"}), 4});
    rows.push_back({"E6", corpus_plane({{"t^3", "t^4"}}, {"Y^3 - X^4"}), 6});
    rows.push_back({"E8", corpus_plane({{"t^3", "t^5"}}, {"Y^3 - X^5"}), 8});
    {
        Curve sp;
        sp.nvars = 3;
        Branch b;
        b.coords = {parse_series("t^3"), parse_series("t^4"), parse_series("t^5")};
        b.label = "b1";
        sp.branches.push_back(b);
        rows.push_back({"monomial space curve", sp, 4});
    }
    rows.push_back({"three cuspidal branches",
                    corpus_plane({{"t^3", "t^7"}, {"t^3", "t^7+t^8"}, {"t^4", "t^9+t^10"}},
                                 {"Y^3 - X^7", "Y^3 - 3*X^5*Y - X^7 - X^8",
                                  "Y^4 - 2*X^5*Y^2 - 4*X^7*Y - X^9 + X^10"}),
                    157});
    {
        MPoly f = parse_polynomial(
            "(Y^3 - X^7)*(Y^3 - 3*X^5*Y - X^7 - X^8)*(Y^4 - 2*X^5*Y^2 - 4*X^7*Y - X^9 + X^10)",
            {"X", "Y"});
        Curve c;
        c.nvars = 2;
        c.branches = puiseux_branches(f, 128);
        c.poly = f;
        attach_factors(c);
        rows.push_back({"same, expanded from the equation", c, 157});
    }

    bool all = true;
    out << "selftest:\n";
    for (Row& row : rows) {
        std::string status;
        long got = -1;
        try {
            InvariantReport rep = analyze(row.curve);
            got = rep.tjurina_value;
            bool ok = got == row.expect && rep.all_checks_pass();
            status = ok ? "ok" : "FAIL";
            all = all && ok;
        } catch (const std::exception& e) {
            status = std::string("FAIL (") + e.what() + ")";
            all = false;
        }
        out << "  " << row.name;
        for (size_t pad = row.name.size(); pad < 34; ++pad) out << ' ';
        out << "tau " << got << " (expected " << row.expect << ")  " << status << "\n";
    }
    out << (all ? "all selftests passed\n" : "SELFTEST FAILURES\n");
    return all ? 0 : 4;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"value-theoretic invariants of reduced algebroid curves", "tjurina"};
    app.require_subcommand(1);

    std::string input_path, order_str;
    bool json_out = false, verify = false;
    long trunc = 0, slack = -1;

    CLI::App* compute = app.add_subcommand("compute", "analyze one curve from a JSON file");
    compute->add_option("input", input_path, "input file (JSON)")->required();
    compute->add_flag("--json", json_out, "machine-readable output");
    compute->add_flag("--verify", verify, "run the independent identity checks");
    compute->add_option("--trunc", trunc, "series truncation override");
    compute->add_option("--box-slack", slack, "extra margin on computation windows");
    compute->add_option("--order", order_str, "branch permutation, e.g. 2,1,3");

    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in corpus");

    std::vector<const char*> argv;
    argv.push_back("tjurina");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (selftest->parsed()) return selftest_cmd(out);
    if (compute->parsed())
        return compute_cmd(input_path, json_out, verify, trunc, slack, order_str, out, err);
    err << app.help();
    return 2;
}

}  // namespace tjurina
