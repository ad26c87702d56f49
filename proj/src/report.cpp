#include "conecheck/report.hpp"

#include <set>
#include <sstream>
#include <utility>

namespace conecheck {

namespace {

using json = nlohmann::ordered_json;

std::string tri_text(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        default: return "unknown";
    }
}

bool value_is_definite(const EvalValue& v) {
    if (v.kind == EvalValue::Kind::Integer) return v.num.has_value() || v.range.has_value();
    if (v.kind == EvalValue::Kind::Tristate) return v.tri != Tri::Unknown;
    return true;
}

bool check_passes(const EvalValue& v, const ExpectedLiteral& want) {
    if (want.is_tri) {
        if (v.kind == EvalValue::Kind::Tristate) return v.tri == want.tri;
        if (want.tri == Tri::Unknown)
            return v.kind == EvalValue::Kind::Integer && !v.num && !v.range;
        return false;
    }
    return v.kind == EvalValue::Kind::Integer && v.num && *v.num == want.num;
}

json witness_json(const DbWitness& w) {
    return json{{"n", w.n}, {"i", w.i}, {"value", w.value}};
}

// The first unresolved (n, i) recorded on an Unknown criterion certificate.
std::optional<json> unresolved_json(const DbResult& r) {
    if (r.state != Tri::Unknown) return std::nullopt;
    for (const Cert& p : r.cert.premises) {
        auto n = find_data(p, "n");
        auto i = find_data(p, "i");
        if (n && i) return json{{"n", *n}, {"i", *i}};
    }
    return std::nullopt;
}

bool cert_certified(const Cert& c) {
    auto v = find_data(c, "value");
    return v && *v == 1;
}

// ---------------------------------------------------------------------------
// Text rendering, generated from the document alone.
// ---------------------------------------------------------------------------

std::string row_suffix(const json& row) {
    std::string out;
    if (row.contains("witness")) {
        const json& w = row["witness"];
        out += " (witness n=" + w["n"].dump() + " i=" + w["i"].dump() +
               " value=" + w["value"].dump() + ")";
    }
    if (row.contains("unresolved")) {
        const json& u = row["unresolved"];
        out += " (unresolved at n=" + u["n"].dump() + " i=" + u["i"].dump() + ")";
    }
    if (row.contains("replay") && row["replay"] == "failed") out += " (replay failed)";
    return out;
}

std::string render_text(const json& doc) {
    std::ostringstream out;
    out << "scenario " << doc["scenario"].get<std::string>() << "\n";
    out << "sweep " << doc["sweep"].dump() << "\n";

    if (!doc["checks"].empty()) {
        out << "\n";
        for (const json& row : doc["checks"]) {
            out << "[" << row["status"].get<std::string>() << "] "
                << row["name"].get<std::string>();
            if (row.contains("expression"))
                out << ": " << row["expression"].get<std::string>();
            out << " == " << row["expected"].get<std::string>();
            if (row["status"] == "fail") out << ", got " << row["actual"].get<std::string>();
            out << row_suffix(row) << "\n";
        }
    }

    for (const auto& [name, rows] : doc["tables"].items()) {
        out << "\ntable " << name << "\n";
        for (const json& row : rows)
            for (const auto& [key, val] : row.items())
                if (key != "value")
                    out << "  " << key << " = " << val.dump() << ": " << row["value"].dump()
                        << "\n";
    }

    if (!doc["verdict"].is_null()) {
        const json& v = doc["verdict"];
        out << "\nverdict for " << v["hypersurface"].get<std::string>() << " polarized by "
            << v["polarization"].get<std::string>();
        if (v.contains("boundary")) out << " with boundary " << v["boundary"].get<std::string>();
        out << "\n";
        for (const char* key : {"db_pair", "db_space"}) {
            out << "  " << key << ": " << v[key].get<std::string>();
            std::string wkey = std::string(key) + "_witness";
            std::string ukey = std::string(key) + "_unresolved";
            if (v.contains(wkey))
                out << " (witness n=" << v[wkey]["n"].dump() << " i=" << v[wkey]["i"].dump()
                    << " value=" << v[wkey]["value"].dump() << ")";
            if (v.contains(ukey))
                out << " (unresolved at n=" << v[ukey]["n"].dump() << " i=" << v[ukey]["i"].dump()
                    << ")";
            out << "\n";
        }
        out << "  cartier_index: " << v["cartier_index"].dump() << "\n";
        out << "  connected: " << v["connected"].get<std::string>() << "\n";
        out << "  smooth: " << v["smooth"].get<std::string>() << "\n";
        if (v.contains("boundary_smooth"))
            out << "  boundary_smooth: " << v["boundary_smooth"].get<std::string>() << "\n";
        out << "  cube: " << v["cube"].dump() << "\n";
        out << "  replay: " << v["replay"].get<std::string>() << "\n";
    }

    if (!doc["assumptions"].empty()) {
        out << "\nassumptions:";
        for (const json& a : doc["assumptions"]) out << " " << a.get<std::string>();
        out << "\n";
    }

    if (doc.contains("explain")) {
        const json& ex = doc["explain"];
        out << "\nexplain " << ex["expression"].get<std::string>() << " = "
            << ex["value"].get<std::string>() << "\n";
        out << ex["tree"].get<std::string>();
    }

    out << "\nresult: " << doc["result"].get<std::string>();
    if (doc["failures"].get<i64>() > 0)
        out << " (" << doc["failures"].dump() << " of " << doc["steps"].dump() << " steps failed)";
    else
        out << " (" << doc["steps"].dump() << " steps)";
    out << "\n";
    return out.str();
}

std::string render_result(const json& doc, const std::string& format) {
    if (format == "json") return doc.dump(2) + "\n";
    return render_text(doc);
}

// ---------------------------------------------------------------------------

ReportResult run_verify_impl(const Scenario& sc, const ReportOptions& opt) {
    json doc;
    doc["scenario"] = sc.name;
    i64 nsweep = opt.nmax > 0 ? opt.nmax : sc.pipeline.sweep;
    doc["sweep"] = nsweep;
    json checks = json::array();
    json tables = json::object();
    json verdict;  // null unless a verdict line ran

    std::set<std::string> assumptions;
    i64 failures = 0, steps = 0;
    const Pipeline& p = sc.pipeline;
    const bool run_all = opt.only_check.empty();
    bool matched = run_all;

    auto collect = [&assumptions](const Cert& c) {
        for (std::string& a : collect_assumptions(c)) assumptions.insert(std::move(a));
    };

    for (const CheckDecl& cd : p.checks) {
        if (!run_all && cd.name != opt.only_check) continue;
        matched = true;
        EvalValue v = eval_expression(sc, *cd.expr);
        json row;
        row["name"] = cd.name;
        row["kind"] = "expression";
        row["expression"] = render_expr(*cd.expr);
        row["expected"] = cd.expected.render();
        row["actual"] = v.display;
        bool pass = check_passes(v, cd.expected);
        if (v.cert) {
            collect(*v.cert);
            if (pass && value_is_definite(v)) {
                bool ok = replay_ok(*v.cert);
                row["replay"] = ok ? "ok" : "failed";
                if (!ok) pass = false;
            }
        }
        row["status"] = pass ? "pass" : "fail";
        ++steps;
        if (!pass) ++failures;
        checks.push_back(std::move(row));
    }

    bool verdict_wanted = false;
    if (p.verdict) {
        if (run_all) verdict_wanted = true;
        for (const Expectation& ex : p.expectations)
            if (ex.key == opt.only_check) verdict_wanted = true;
    }

    bool verdict_replay_ok = true;
    std::optional<Verdict> vres;
    if (verdict_wanted) {
        const HypersurfaceModel& t = *sc.find_hypersurface(p.verdict->hypersurface);
        const ProductClass& pol = *sc.find_class(p.verdict->polarization)->product;
        std::optional<ProductClass> boundary;
        if (p.verdict->boundary) boundary = *sc.find_class(*p.verdict->boundary)->product;
        vres = assemble_verdict(t, pol, boundary, nsweep);
        for (const std::string& a : vres->assumptions) assumptions.insert(a);

        verdict["hypersurface"] = p.verdict->hypersurface;
        verdict["polarization"] = p.verdict->polarization;
        if (p.verdict->boundary) verdict["boundary"] = *p.verdict->boundary;
        verdict["db_pair"] = tri_text(vres->pair.state);
        if (vres->pair.witness) verdict["db_pair_witness"] = witness_json(*vres->pair.witness);
        if (auto u = unresolved_json(vres->pair)) verdict["db_pair_unresolved"] = *u;
        verdict["db_space"] = tri_text(vres->space.state);
        if (vres->space.witness) verdict["db_space_witness"] = witness_json(*vres->space.witness);
        if (auto u = unresolved_json(vres->space)) verdict["db_space_unresolved"] = *u;
        verdict["cartier_index"] = vres->cartier;
        const std::vector<Cert>& prem = vres->cert.premises;
        verdict["connected"] = cert_certified(prem[3]) ? "true" : "false";
        verdict["smooth"] = cert_certified(prem[4]) ? "true" : "false";
        if (p.verdict->boundary)
            verdict["boundary_smooth"] = cert_certified(prem[5]) ? "true" : "false";
        if (auto cube = find_data(prem[3], "cube")) verdict["cube"] = *cube;
        verdict_replay_ok = replay_ok(vres->cert);
        verdict["replay"] = verdict_replay_ok ? "ok" : "failed";
    }

    for (const Expectation& ex : p.expectations) {
        if (!run_all && ex.key != opt.only_check) continue;
        matched = true;
        json row;
        row["name"] = ex.key;
        row["kind"] = "verdict-expectation";
        row["expected"] = ex.value.render();
        bool pass = false;
        if (ex.key == "db_pair" || ex.key == "db_space") {
            const DbResult& r = ex.key == "db_pair" ? vres->pair : vres->space;
            row["actual"] = tri_text(r.state);
            pass = ex.value.is_tri && ex.value.tri == r.state;
            if (r.witness) row["witness"] = witness_json(*r.witness);
            if (auto u = unresolved_json(r)) row["unresolved"] = *u;
        } else if (ex.key == "cartier_index") {
            row["actual"] = std::to_string(vres->cartier);
            pass = !ex.value.is_tri && ex.value.num == vres->cartier;
        } else {
            int idx = ex.key == "connected" ? 3 : ex.key == "smooth" ? 4 : 5;
            bool certified = cert_certified(vres->cert.premises[idx]);
            row["actual"] = certified ? "true" : "false";
            pass = ex.value.is_tri && ex.value.tri == (certified ? Tri::True : Tri::False);
        }
        row["status"] = pass ? "pass" : "fail";
        ++steps;
        if (!pass) ++failures;
        checks.push_back(std::move(row));
    }

    for (const TableDecl& td : p.tables) {
        if (!run_all && td.name != opt.only_check) continue;
        matched = true;
        json rows = json::array();
        for (i64 k = td.lo; k <= td.hi; ++k) {
            EvalValue v = eval_expression(sc, *td.expr, {{td.var, k}});
            json row;
            row[td.var] = k;
            if (v.num)
                row["value"] = *v.num;
            else
                row["value"] = v.display;
            if (v.cert) collect(*v.cert);
            rows.push_back(std::move(row));
        }
        tables[td.name] = std::move(rows);
    }

    if (!matched) throw EngineError("unknown check '" + opt.only_check + "'");

    doc["checks"] = std::move(checks);
    doc["tables"] = std::move(tables);
    doc["verdict"] = std::move(verdict);
    json alist = json::array();
    for (const std::string& a : assumptions) alist.push_back(a);
    doc["assumptions"] = std::move(alist);

    if (!opt.explain.empty()) {
        EvalValue v = eval_expression(sc, opt.explain);
        json ex;
        ex["expression"] = opt.explain;
        ex["value"] = v.display;
        ex["tree"] = v.cert ? render_cert(*v.cert) : "no certificate";
        doc["explain"] = std::move(ex);
    }

    bool ok = failures == 0 && verdict_replay_ok;
    doc["steps"] = steps;
    doc["failures"] = failures;
    doc["result"] = ok ? "pass" : "fail";

    ReportResult out;
    out.exit_code = ok ? 0 : 1;
    out.doc = std::move(doc);
    out.rendered = render_result(out.doc, opt.format);
    return out;
}

}  // namespace

ReportResult run_verify(const Scenario& sc, const ReportOptions& opt) {
    try {
        return run_verify_impl(sc, opt);
    } catch (const std::exception& e) {
        ReportResult out;
        out.exit_code = 2;
        out.doc = json{{"scenario", sc.name}, {"error", e.what()}};
        out.rendered = opt.format == "json" ? out.doc.dump(2) + "\n"
                                            : "error: " + std::string(e.what()) + "\n";
        return out;
    }
}

}  // namespace conecheck
