#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wdisp/io/json.hpp"
#include "wdisp/ring/parse.hpp"
#include "wdisp/selftest/criteria.hpp"

namespace wdisp::cli {

struct Options {
  unsigned long p = 0;
  std::size_t len = 0, h = 0, d = 0;
  unsigned order = 0, precision = 0;
  std::string ring = "Z", format = "json", input, x, y, change, matrix, map, name;
  std::optional<std::size_t> max_iter, chart;
  std::uint64_t budget = std::uint64_t(1) << 20;
  bool verify = false;
};

struct Output {
  Json doc;
  std::string text;
  int code = 0;
};

namespace detail {

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + " is not valid JSON: " + e.what());
  }
}

/// Inline JSON for values starting with '{' or '[', otherwise a file path.
inline Json json_argument(const std::string& value, const std::string& what) {
  std::string t = wdisp::detail::strip(value);
  if (!t.empty() && (t[0] == '{' || t[0] == '[')) return parse_json_text(t, what);
  std::ifstream f(t);
  if (!f) throw ParseError("cannot read " + what + " file '" + t + "'");
  return parse_json_text(std::string(std::istreambuf_iterator<char>(f), {}), what);
}

/// A Witt vector argument: JSON array of components or a bare element.
inline Json witt_argument(const std::string& value) {
  std::string t = wdisp::detail::strip(value);
  if (!t.empty() && (t[0] == '[' || t[0] == '{')) return parse_json_text(t, "Witt vector");
  return Json(t);
}

class Context {
 public:
  Context(const Options& o, std::istream& in) : o_(o), in_(in) {}

  Json document() {
    std::string text;
    if (o_.input.empty() || o_.input == "-") {
      text.assign(std::istreambuf_iterator<char>(in_), {});
    } else {
      std::ifstream f(o_.input);
      if (!f) throw ParseError("cannot read input file '" + o_.input + "'");
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    if (wdisp::detail::strip(text).empty()) throw ParseError("no input document");
    return parse_json_text(text, "input document");
  }

  DisplayInstance display() { return display_from_json(document()); }

 private:
  const Options& o_;
  std::istream& in_;
};

inline unsigned long require_prime(unsigned long p) {
  if (!is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
  return p;
}

inline Json chart_json(const Ring& R, const ChartResult& c) {
  Json j{{"chart", c.chart}, {"applicable", c.applicable}};
  if (!c.applicable) return j;
  j["etale"] = c.result.etale;
  j["reason"] = c.result.reason;
  j["jacobian"] = R.to_string(c.result.jacobian);
  return j;
}

}  // namespace detail

// ---- witt ----

inline Output witt_command(const std::string& op, const Options& o) {
  Ring R = parse_ring(o.ring);
  WittRing w(R, detail::require_prime(o.p));
  if (op == "teich") {
    if (o.x.empty()) throw ParseError("--x is required");
    auto v = w.teich(element_from_json(R, Json(o.x)), o.len ? o.len : 1);
    return {witt_to_json(w, v), witt_text(w, v)};
  }
  if (o.x.empty()) throw ParseError("--x is required");
  WittVector x = witt_from_json(w, detail::witt_argument(o.x), o.len);
  std::size_t len = x.size();
  auto result = [&](const WittVector& v) { return Output{witt_to_json(w, v), witt_text(w, v)}; };
  if (op == "add" || op == "mul") {
    if (o.y.empty()) throw ParseError("--y is required");
    WittVector y = witt_from_json(w, detail::witt_argument(o.y), len);
    return result(op == "add" ? w.add(x, y) : w.mul(x, y));
  }
  if (op == "frob") {
    if (!w.char_p() && len < 2) throw PrecisionError("Frobenius over a ring not of characteristic p needs length >= 2");
    return result(w.frob(x));
  }
  if (op == "versch") return result(w.versch(x));
  if (op == "invert") return result(w.invert(x));
  if (op == "ghost") {
    Json g = Json::array();
    std::string text = "[";
    for (std::size_t k = 0; k < len; ++k) {
      Element gk = w.ghost(x, k);
      g.push_back(element_to_json(R, gk));
      text += (k ? ", " : "") + R.to_string(gk);
    }
    return {Json{{"p", w.p()}, {"N", len}, {"ring", ring_to_json(R)}, {"ghost", g}}, text + "]"};
  }
  throw std::logic_error("unhandled witt command " + op);
}

// ---- display ----

inline Output display_output(const WittRing& w, const Display<WittRing>& D) {
  return {display_to_json(w, D), witt_matrix_text(w, D.B)};
}

inline Output display_command(const std::string& op, const Options& o, detail::Context& ctx) {
  if (op == "example") {
    if (o.name.empty()) {
      std::string text;
      for (const auto& n : example_names()) text += n + "\n";
      return {Json{{"examples", example_names()}}, text};
    }
    std::optional<unsigned long> p;
    std::optional<std::size_t> N;
    if (o.p) p = o.p;
    if (o.len) N = o.len;
    auto inst = example_display(o.name, p, N);
    return display_output(inst.witt, inst.display);
  }
  if (op == "new") {
    if (o.matrix.empty()) throw ParseError("--matrix is required");
    if (!o.h) throw ParseError("--h is required");
    WittRing w(parse_ring(o.ring), detail::require_prime(o.p));
    auto B = witt_matrix_from_json(w, detail::json_argument(o.matrix, "matrix"), o.len);
    auto D = make_display(w, o.h, o.d ? o.d : o.h - 1, std::move(B));
    return display_output(w, D);
  }
  auto inst = ctx.display();
  const WittRing& w = inst.witt;
  const Display<WittRing>& D = inst.display;
  const Ring& R = w.base();
  if (op == "check") {
    Element det = ring_det(R, witt_w0(w, D.B));
    Json doc{{"valid", true},
             {"p", w.p()},
             {"N", inst.length},
             {"h", D.h},
             {"d", D.d},
             {"ring", ring_to_json(R)},
             {"w0_det", element_to_json(R, det)},
             {"structure_matrix", witt_matrix_json(w, structure_matrix(w, D))}};
    return {doc, "valid display: h=" + std::to_string(D.h) + " d=" + std::to_string(D.d) + " N=" +
                     std::to_string(inst.length) + " over " + R.to_string() + ", det w0(B) = " + R.to_string(det)};
  }
  if (op == "nilpotent") {
    auto n = is_nilpotent(w, D, o.max_iter);
    return {nilpotence_json(n), n.to_string()};
  }
  if (op == "change") {
    if (o.change.empty()) throw ParseError("--change is required");
    auto C = change_from_json(w, detail::json_argument(o.change, "coordinate change"), D.h, D.d, inst.length);
    auto res = change_of_coords(w, D, C);
    return {Json{{"display", display_to_json(w, res.display)}, {"factor", ring_matrix_json(R, res.factor)}},
            witt_matrix_text(w, res.display.B) + "factor = " + ring_matrix_text(R, res.factor)};
  }
  if (op == "dual") return display_output(w, dual(w, D));
  if (op == "reduce-h2") {
    auto [E, C] = reduce_h2(w, D);
    return {Json{{"display", display_to_json(w, E)}, {"change", change_to_json(w, C)}}, witt_matrix_text(w, E.B)};
  }
  if (op == "point") {
    auto pt = projective_point(w, D);
    Json j = Json::array();
    for (const auto& x : pt) j.push_back(R.to_string(x));
    return {Json{{"ring", ring_to_json(R)}, {"point", j}}, point_text(R, pt)};
  }
  throw std::logic_error("unhandled display command " + op);
}

// ---- dieudonne ----

inline Output dieudonne_command(const std::string& op, detail::Context& ctx) {
  Json doc = ctx.document();
  if (op == "from-display") {
    auto inst = display_from_json(doc);
    auto M = to_dieudonne(inst.witt, inst.display);
    return {dieudonne_to_json(inst.witt, M),
            "F =\n" + witt_matrix_text(inst.witt, M.F) + "V =\n" + witt_matrix_text(inst.witt, M.V)};
  }
  if (op == "check-fv") {
    bool ok;
    if (doc.is_object() && doc.contains("F_matrix")) {
      auto inst = dieudonne_from_json(doc);
      ok = check_fv(inst.witt, inst.module);
    } else {
      auto inst = display_from_json(doc);
      ok = check_fv(inst.witt, to_dieudonne(inst.witt, inst.display));
    }
    return {Json{{"FV_equals_p", ok}, {"VF_equals_p", ok}}, std::string("FV = VF = p: ") + (ok ? "true" : "false")};
  }
  throw std::logic_error("unhandled dieudonne command " + op);
}

// ---- moduli ----

inline Output moduli_command(const std::string& op, const Options& o) {
  unsigned long p = detail::require_prime(o.p ? o.p : 2);
  auto P = build_presentation(p, o.len ? o.len : 2, o.h ? o.h : 2, o.precision);
  if (op == "present") {
    Json doc = presentation_to_json(P);
    std::string text = "A = " + P.A.to_string() + "\nGamma = " + P.Gamma.to_string() + "\n";
    for (const auto& [name, x] : P.eta_R) text += "eta_R(" + name + ") = " + P.Gamma.to_string(x) + "\n";
    if (o.verify) {
      auto ax = check_symbolic_axioms(P);
      doc["axioms"] = Json{{"counit_eta_R", ax.counit_eta_R}, {"counit_left", ax.counit_left},
                           {"counit_right", ax.counit_right}, {"coassociative", ax.coassociative},
                           {"right_unit", ax.right_unit},     {"antipode", ax.antipode}};
      text += std::string("axioms: ") + (ax.all() ? "all hold" : "FAIL") + "\n";
    }
    text.pop_back();
    return {doc, text};
  }
  if (op == "invariant-ideal") {
    auto cert = invariant_ideal_certificate(P);
    const Ring& G = P.Gamma;
    std::string hh = generator_name("beta", 0, P.h - 1, P.h - 1);
    Json doc{{"generator", hh},
             {"image", G.to_string(cert.image)},
             {"unit", G.to_string(cert.unit)},
             {"rest", G.to_string(cert.rest)},
             {"one_form_factor", G.to_string(cert.one_form_factor)},
             {"unit_is_unit", cert.unit_is_unit},
             {"identity_holds", cert.identity_holds},
             {"invariant", cert.unit_is_unit && cert.identity_holds}};
    return {doc, "eta_R(" + hh + ") = (" + G.to_string(cert.unit) + ")*" + hh + " + " + std::to_string(P.p) + "*(" +
                     G.to_string(cert.rest) + ")"};
  }
  throw std::logic_error("unhandled moduli command " + op);
}

// ---- deform ----

inline Output deform_command(const std::string& op, const Options& o, detail::Context& ctx) {
  if (op == "etale" && !o.map.empty()) {
    Ring R = parse_ring(o.ring);
    ChartMap m{0, {}};
    for (const auto& part : wdisp::detail::split_top(o.map, ',')) m.coords.push_back(parse_element(part, R));
    auto res = jacobian_etale_check(R, m);
    return {Json{{"ring", ring_to_json(R)}, {"etale", res.etale}, {"reason", res.reason},
                 {"jacobian", R.to_string(res.jacobian)}},
            std::string(res.etale ? "etale: " : "not etale: ") + res.reason};
  }
  auto inst = ctx.display();
  const WittRing& w = inst.witt;
  const Ring& R = w.base();
  if (op == "etale") {
    auto pt = projective_point(w, inst.display);
    std::vector<ChartResult> charts;
    if (o.chart) {
      if (*o.chart >= pt.size()) throw DomainError("chart index out of range");
      ChartResult c{*o.chart, R.is_unit(pt[*o.chart]), {}};
      if (c.applicable) c.result = jacobian_etale_check(R, chart_map(R, pt, c.chart));
      charts.push_back(c);
    } else {
      charts = etale_all_charts(R, pt);
    }
    Json cj = Json::array(), pj = Json::array();
    for (const auto& x : pt) pj.push_back(R.to_string(x));
    std::string text = "point " + point_text(R, pt);
    bool etale = false;
    for (const auto& c : charts) {
      cj.push_back(detail::chart_json(R, c));
      Json& last = cj.back();
      if (c.applicable) {
        Json mj = Json::object();
        auto m = chart_map(R, pt, c.chart);
        std::size_t k = 0;
        for (std::size_t i = 0; i < pt.size(); ++i)
          if (i != c.chart) mj["x" + std::to_string(i) + "/x" + std::to_string(c.chart)] = coefficient_table(R, m.coords[k++]);
        last["map"] = mj;
        etale = etale || c.result.etale;
      }
      text += "\nchart " + std::to_string(c.chart) + ": " +
              (c.applicable ? (c.result.etale ? "etale" : "not etale") + std::string(" (") + c.result.reason + ")"
                            : std::string("not applicable"));
    }
    return {Json{{"ring", ring_to_json(R)}, {"point", pj}, {"charts", cj}, {"etale", etale}}, text};
  }
  if (op == "tangent-oracle") {
    auto res = tangent_lift_oracle(w, inst.display, o.budget);
    WittRing we(res.ring, w.p());
    Json reps = Json::array();
    for (const auto& M : res.representative_matrices) reps.push_back(witt_matrix_json(we, M));
    Json doc{{"lift_count", res.lift_count},
             {"class_count", res.class_count},
             {"expected", res.expected},
             {"representatives", res.representatives},
             {"representative_matrices", reps},
             {"lift_ring", ring_to_json(res.ring)},
             {"componentwise_addition", res.componentwise_addition},
             {"closed_form_matches", res.closed_form_matches},
             {"nilpotent", res.nilpotent},
             {"generators", res.generators}};
    std::string text = std::to_string(res.class_count) + " classes of " + std::to_string(res.lift_count) +
                       " lifts (expected " + std::to_string(res.expected) + ")";
    if (!res.nilpotent) text += "\nwarning: display is not nilpotent";
    return {doc, text};
  }
  throw std::logic_error("unhandled deform command " + op);
}

// ---- period ----

inline Output period_command(const std::string& op, const Options& o) {
  unsigned long p = detail::require_prime(o.p ? o.p : 2);
  std::size_t h = o.h ? o.h : 2;
  unsigned M = o.order ? o.order : unsigned(p * p + 1);
  if (op == "psi") {
    Ring R = period_ring(h, M);
    auto Psi = psi_matrix(R, h, p), Bar = psi_matrix(R, h, p, true);
    return {Json{{"ring", ring_to_json(R)}, {"Psi", ring_matrix_tables(R, Psi)}, {"PsiBar", ring_matrix_tables(R, Bar)}},
            "Psi = " + ring_matrix_text(R, Psi) + "\nPsiBar = " + ring_matrix_text(R, Bar)};
  }
  auto PA = horizontal_sections(h, M, p);
  const Ring& R = PA.ring;
  if (op == "sections") {
    Json doc{{"ring", ring_to_json(R)},
             {"h", h},
             {"p", p},
             {"order", M},
             {"A", ring_matrix_tables(R, PA.A)},
             {"iterations", PA.iterations},
             {"residual_zero", PA.residual_zero},
             {"integral_mod_Jp", PA.integral_mod_Jp},
             {"det", coefficient_table(R, PA.det)}};
    return {doc, "A = " + ring_matrix_text(R, PA.A)};
  }
  if (op == "map") {
    auto row = period_map(PA);
    Json coords = Json::array();
    for (const auto& x : row) coords.push_back(coefficient_table(R, x));
    return {Json{{"ring", ring_to_json(R)}, {"coordinates", coords}, {"residual_zero", PA.residual_zero}},
            point_text(R, row)};
  }
  throw std::logic_error("unhandled period command " + op);
}

// ---- entry point ----

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

inline Output selftest_command() {
  CliRunner runner = [](const std::vector<std::string>& args, const std::string& input) {
    std::ostringstream o, e;
    std::istringstream i(input);
    int code = run(args, o, e, i);
    return CliOutcome{code, o.str()};
  };
  auto results = run_criteria(runner, false);
  Json list = Json::array();
  std::string text;
  std::size_t passed = 0;
  for (const auto& r : results) {
    list.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    text += "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS" : "FAIL") + "  " + r.name + " (" + r.detail + ")\n";
    passed += r.pass;
  }
  text.pop_back();
  return {Json{{"criteria", list}, {"passed", passed}, {"total", results.size()}}, text, passed == results.size() ? 0 : 1};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  Options o;
  CLI::App app{"Exact Witt vectors, displays and their moduli", "wdisp"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::string group, op;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto reads_input = [&](CLI::App* s) { s->add_option("--input", o.input, "Input document file, or - for stdin"); };
  auto witt_flags = [&](CLI::App* s) {
    s->add_option("--p", o.p, "Prime")->required();
    s->add_option("--len", o.len, "Witt length");
    s->add_option("--ring", o.ring, "Base ring descriptor");
    s->add_option("--x", o.x, "Witt vector (JSON component list) or element");
  };
  auto leaf = [&](CLI::App* parent, const std::string& g, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->set_help_flag("--help", "Print this help message and exit");
    s->callback([&group, &op, g, name] {
      group = g;
      op = name;
    });
    common(s);
    return s;
  };

  CLI::App* witt = app.add_subcommand("witt", "Truncated Witt vector arithmetic");
  witt->set_help_flag("--help", "Print this help message and exit");
  witt->require_subcommand(1);
  for (const char* name : {"add", "mul", "frob", "versch", "teich", "ghost", "invert"}) {
    CLI::App* s = leaf(witt, "witt", name, std::string("Witt ") + name);
    witt_flags(s);
    if (std::string(name) == "add" || std::string(name) == "mul") s->add_option("--y", o.y, "Second Witt vector");
  }

  CLI::App* disp = app.add_subcommand("display", "Displays in matrix form");
  disp->set_help_flag("--help", "Print this help message and exit");
  disp->require_subcommand(1);
  {
    CLI::App* s = leaf(disp, "display", "new", "Build and validate a display");
    s->add_option("--p", o.p, "Prime")->required();
    s->add_option("--len", o.len, "Witt length");
    s->add_option("--h", o.h, "Height")->required();
    s->add_option("--d", o.d, "Dimension (default h - 1)");
    s->add_option("--ring", o.ring, "Base ring descriptor");
    s->add_option("--matrix", o.matrix, "Matrix B as JSON rows, or a file")->required();
    for (const char* name : {"check", "nilpotent", "change", "dual", "reduce-h2", "point"}) {
      CLI::App* t = leaf(disp, "display", name, std::string("Display ") + name);
      reads_input(t);
      if (std::string(name) == "nilpotent") t->add_option("--max-iter", o.max_iter, "Iteration bound");
      if (std::string(name) == "change") t->add_option("--change", o.change, "Coordinate change as JSON, or a file")->required();
    }
    CLI::App* e = leaf(disp, "display", "example", "Named example display");
    e->add_option("name", o.name, "Example name (omit to list)");
    e->add_option("--p", o.p, "Prime");
    e->add_option("--len", o.len, "Witt length");
  }

  CLI::App* dieu = app.add_subcommand("dieudonne", "Dieudonne modules over finite fields");
  dieu->set_help_flag("--help", "Print this help message and exit");
  dieu->require_subcommand(1);
  for (const char* name : {"from-display", "check-fv"}) reads_input(leaf(dieu, "dieudonne", name, std::string("Dieudonne ") + name));

  CLI::App* mod = app.add_subcommand("moduli", "Hopf algebroid presentation");
  mod->set_help_flag("--help", "Print this help message and exit");
  mod->require_subcommand(1);
  for (const char* name : {"present", "invariant-ideal"}) {
    CLI::App* s = leaf(mod, "moduli", name, std::string("Moduli ") + name);
    s->add_option("--p", o.p, "Prime");
    s->add_option("--len", o.len, "Witt length N");
    s->add_option("--h", o.h, "Height");
    s->add_option("--precision", o.precision, "Coefficients are Z/p^precision (default N + 1)");
    if (std::string(name) == "present") s->add_flag("--verify", o.verify, "Check the Hopf algebroid axioms");
  }

  CLI::App* def = app.add_subcommand("deform", "Deformation theory");
  def->set_help_flag("--help", "Print this help message and exit");
  def->require_subcommand(1);
  {
    CLI::App* s = leaf(def, "deform", "etale", "Jacobian criterion on charts");
    reads_input(s);
    s->add_option("--chart", o.chart, "Single chart index");
    s->add_option("--ring", o.ring, "Ring for --map");
    s->add_option("--map", o.map, "Comma-separated coordinate functions");
    CLI::App* t = leaf(def, "deform", "tangent-oracle", "Enumerate first-order lifts");
    reads_input(t);
    t->add_option("--budget", o.budget, "Maximum number of lifts");
  }

  CLI::App* per = app.add_subcommand("period", "Period map approximation");
  per->set_help_flag("--help", "Print this help message and exit");
  per->require_subcommand(1);
  for (const char* name : {"psi", "sections", "map"}) {
    CLI::App* s = leaf(per, "period", name, std::string("Period ") + name);
    s->add_option("--h", o.h, "Height");
    s->add_option("--p", o.p, "Prime");
    s->add_option("--order", o.order, "J-adic order M (default p^2 + 1)");
  }

  CLI::App* self = leaf(&app, "selftest", "selftest", "Run the acceptance criteria");
  (void)self;

  std::vector<std::string> argv_store{"wdisp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    detail::Context ctx(o, in);
    Output res;
    if (group == "witt") res = witt_command(op, o);
    else if (group == "display") res = display_command(op, o, ctx);
    else if (group == "dieudonne") res = dieudonne_command(op, ctx);
    else if (group == "moduli") res = moduli_command(op, o);
    else if (group == "deform") res = deform_command(op, o, ctx);
    else if (group == "period") res = period_command(op, o);
    else res = selftest_command();
    if (o.format == "text") {
      std::string text = res.text.empty() ? res.doc.dump(2) : res.text;
      while (!text.empty() && text.back() == '\n') text.pop_back();
      out << text << "\n";
    }
    else out << res.doc.dump(2) << "\n";
    return res.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wdisp::cli
