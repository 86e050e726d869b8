#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wdisp/deformation/deformation.hpp"
#include "wdisp/dieudonne/dieudonne.hpp"
#include "wdisp/display/examples.hpp"
#include "wdisp/moduli/moduli.hpp"
#include "wdisp/period/period.hpp"
#include "wdisp/witt/universal.hpp"

namespace wdisp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CliOutcome {
  int code = 0;
  std::string out;
};

/// Runs one CLI invocation with the given stdin text.
using CliRunner = std::function<CliOutcome(const std::vector<std::string>& args, const std::string& input)>;

struct CliFixture {
  std::vector<std::string> args;
  int pipe_from = -1;  ///< stdin is the output of this earlier fixture
};

namespace selftest {

// ---- random sampling ----

inline Element random_element(const Ring& R, std::mt19937_64& rng) {
  const Integer ch = R.characteristic();
  auto coeff = [&]() -> Integer {
    if (ch > 0) return Integer(static_cast<unsigned long>(rng() % ch.get_ui()));
    return Integer(long(rng() % 11) - 5);
  };
  Element x = R.from_integer(coeff());
  if (R.has_gen()) {
    Element z = R.generator(), zj = R.one();
    for (unsigned j = 1; j < R.gen_degree(); ++j) {
      zj = R.mul(zj, z);
      x = R.add(x, R.mul(R.from_integer(coeff()), zj));
    }
  }
  for (std::size_t v = 0; v < R.nvars(); ++v) {
    Element u = R.variable(v), ue = R.one();
    for (int e = 1; e <= 3; ++e) {
      ue = R.mul(ue, u);
      x = R.add(x, R.mul(R.from_integer(coeff()), ue));
    }
  }
  return x;
}

inline WittVector random_witt(const WittRing& w, std::size_t len, std::mt19937_64& rng) {
  std::vector<Element> c;
  for (std::size_t i = 0; i < len; ++i) c.push_back(random_element(w.base(), rng));
  return w.make(std::move(c));
}

inline std::function<WittVector(std::mt19937_64&)> witt_draw(const WittRing& w, std::size_t len) {
  return [&w, len](std::mt19937_64& g) { return random_witt(w, len, g); };
}

inline std::vector<WittVector> random_vector(const WittRing& w, std::size_t h, std::size_t len, std::mt19937_64& rng) {
  std::vector<WittVector> v;
  for (std::size_t i = 0; i < h; ++i) v.push_back(random_witt(w, len, rng));
  return v;
}

inline bool same_at_common_length(const WittRing& w, const WittVector& a, const WittVector& b) {
  std::size_t n = std::min(a.size(), b.size());
  return w.truncate(a, n) == w.truncate(b, n);
}

inline bool vectors_agree(const WittRing& w, const std::vector<WittVector>& a, const std::vector<WittVector>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_at_common_length(w, a[i], b[i])) return false;
  return true;
}

inline std::string fraction(std::size_t good, std::size_t total) {
  return std::to_string(good) + "/" + std::to_string(total);
}

}  // namespace selftest

// ---- 1: Witt ring laws ----

inline CriterionResult criterion_1() {
  using namespace selftest;
  CriterionResult r{1, "Witt ring laws", true, ""};
  std::mt19937_64 rng(101);
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    std::vector<Ring> rings{Ring::integers(), Ring::modular(ipow(p, 3)),
                            Ring::quotient(Ring::polynomial(Ring::modular(Integer(p)), {"u"}), {"u"}, 4)};
    for (const Ring& R : rings) {
      WittRing w(R, p);
      std::size_t good = 0;
      const std::size_t trials = 200;
      for (std::size_t t = 0; t < trials; ++t) {
        std::size_t N = 1 + t % 5;
        auto x = random_witt(w, N, rng), y = random_witt(w, N, rng), z = random_witt(w, N, rng);
        bool ok = true;
        auto sum = w.add(x, y), prod = w.mul(x, y);
        for (std::size_t k = 0; k < N && ok; ++k) {
          ok = w.ghost(sum, k) == R.add(w.ghost(x, k), w.ghost(y, k)) &&
               w.ghost(prod, k) == R.mul(w.ghost(x, k), w.ghost(y, k));
        }
        ok = ok && w.add(sum, z) == w.add(x, w.add(y, z));
        ok = ok && w.mul(prod, z) == w.mul(x, w.mul(y, z));
        ok = ok && w.mul(x, w.add(y, z)) == w.add(prod, w.mul(x, z));
        if (w.char_p() || N >= 2) {
          auto fvx = w.frob(w.versch(x));
          ok = ok && same_at_common_length(w, fvx, w.mul(w.from_integer(Integer(p), N), x));
          auto fx = w.frob(x);
          auto lhs = w.truncate(w.versch_ext(w.mul(fx, w.truncate(y, fx.size()))), N);
          ok = ok && lhs == w.mul(x, w.versch(y));
        }
        ok = ok && w.mul(w.teich(x.c[0], N), w.teich(y.c[0], N)) == w.teich(R.mul(x.c[0], y.c[0]), N);
        if (ok) ++good;
      }
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += "p=" + std::to_string(p) + " " + R.to_string() + ": " + fraction(good, trials);
      r.pass = r.pass && good == trials;
    }
  }
  return r;
}

// ---- 2: universal polynomial spot values ----

inline CriterionResult criterion_2() {
  CriterionResult r{2, "universal polynomial spot values", true, ""};
  const Ring& U = universal_ring();
  Element x0 = U.variable("x0"), x1 = U.variable("x1"), y0 = U.variable("y0"), y1 = U.variable("y1");
  for (unsigned long p : {2ul, 3ul}) {
    Element expected = U.add(x1, y1);
    for (unsigned long i = 1; i < p; ++i) {
      Integer c = 1;
      mpz_bin_uiui(c.get_mpz_t(), p, i);
      expected = U.sub(expected, U.scale(U.mul(U.pow(x0, i), U.pow(y0, p - i)), c / Integer(p)));
    }
    Element table = UniversalCache::instance().get(UniversalKind::Sum, p, 1);
    Element P = U.from_integer(Integer(p));
    Element ghost1 = U.sub(U.add(U.add(U.pow(x0, p), U.mul(P, x1)), U.add(U.pow(y0, p), U.mul(P, y1))), U.pow(U.add(x0, y0), p));
    Element recursion = U.divide(ghost1, Integer(p));
    bool ok = table == expected && recursion == expected;
    r.pass = r.pass && ok;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += "p=" + std::to_string(p) + ": S1 = " + U.to_string(table) + (ok ? "" : " (expected " + U.to_string(expected) + ")");
  }
  return r;
}

// ---- 3: display block formulas ----

inline CriterionResult criterion_3() {
  using namespace selftest;
  CriterionResult r{3, "display block formulas", true, ""};
  std::mt19937_64 rng(303);
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    const std::size_t N = 3;
    WittRing w(Ring::modular(Integer(p)), p);
    Matrix<WittVector> B(2, 2, w.zero(N));
    B(0, 1) = w.one(N);
    B(1, 0) = w.one(N);
    auto D = make_display(w, 2, 1, B);
    std::vector<WittVector> e1{w.one(N), w.zero(N)}, e2{w.zero(N), w.one(N)};
    std::vector<WittVector> pe1{w.from_integer(Integer(p), N), w.zero(N)};
    bool basis = vectors_agree(w, apply_F(w, D, e1), e2) && vectors_agree(w, apply_F(w, D, e2), pe1) &&
                 vectors_agree(w, apply_Vinv(w, D, e2), e1);
    std::size_t good = 0;
    const std::size_t trials = 100;
    for (std::size_t t = 0; t < trials; ++t) {
      auto x = random_witt(w, N, rng);
      auto y = random_vector(w, 2, N, rng);
      auto vx = w.versch(x);
      std::vector<WittVector> q;
      for (const auto& yi : y) q.push_back(w.mul(vx, yi));
      auto lhs = apply_Vinv(w, D, q);
      auto Fy = apply_F(w, D, y);
      std::vector<WittVector> rhs;
      for (const auto& f : Fy) rhs.push_back(w.mul(w.truncate(x, f.size()), f));
      if (vectors_agree(w, lhs, rhs)) ++good;
    }
    r.pass = r.pass && basis && good == trials;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += "p=" + std::to_string(p) + ": basis " + (basis ? "ok" : "FAIL") + ", relation " + fraction(good, trials);
  }
  return r;
}

// ---- 4: change of coordinates coherence ----

inline CriterionResult criterion_4() {
  using namespace selftest;
  CriterionResult r{4, "change of coordinates coherence", true, ""};
  std::mt19937_64 rng(404);
  const unsigned long p = 3;
  const std::size_t N = 2;
  WittRing w(Ring::modular(Integer(p)), p);
  const Ring& R = w.base();
  auto draw = witt_draw(w, N);
  std::size_t conj = 0, functorial = 0, factor = 0;
  const std::size_t trials = 100;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t h = 2 + t % 2, d = 1 + rng() % (h - 1);
    auto D = random_display(w, h, d, rng, draw);
    auto C1 = random_change(w, h, d, rng, draw);
    auto C2 = random_change(w, h, d, rng, draw);
    auto r1 = change_of_coords(w, D, C1);
    auto phi = phi_matrix(w, C1);
    auto x = random_vector(w, h, N, rng);
    bool okF = vectors_agree(w, apply_F(w, r1.display, witt_apply(w, phi, x)), witt_apply(w, phi, apply_F(w, D, x)));
    std::vector<WittVector> q = random_vector(w, h, N, rng);
    for (std::size_t i = 0; i < d; ++i) q[i] = w.versch(q[i]);
    bool okV = vectors_agree(w, apply_Vinv(w, r1.display, witt_apply(w, phi, q)), witt_apply(w, phi, apply_Vinv(w, D, q)));
    if (okF && okV) ++conj;
    auto r12 = change_of_coords(w, r1.display, C2);
    auto r21 = change_of_coords(w, D, compose_changes(w, C2, C1));
    if (witt_matrix_equal(w, r12.display.B, r21.display.B)) ++functorial;
    if (ring_mul(R, r12.factor, r1.factor) == r21.factor) ++factor;
  }
  r.pass = conj == trials && functorial == trials && factor == trials;
  r.detail = "F_3, h in {2,3}: conjugation " + fraction(conj, trials) + ", composition " + fraction(functorial, trials) +
             ", factor product " + fraction(factor, trials);
  return r;
}

// ---- 5: zeta action ----

inline CriterionResult criterion_5() {
  CriterionResult r{5, "zeta action fixture", true, ""};
  for (std::size_t h : {2, 3})
    for (unsigned long p : {3ul, 5ul}) {
      auto z = zeta_action(h, p);
      const WittRing& w = z.original.witt;
      auto res = change_of_coords(w, z.pulled, z.change);
      bool back = witt_matrix_equal(w, res.display.B, z.original.display.B);
      bool scaled = res.factor.rows == 1 && res.factor(0, 0) == z.zeta;
      r.pass = r.pass && back && scaled;
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += "h=" + std::to_string(h) + " p=" + std::to_string(p) + ": display " + (back ? "restored" : "DIFFERS") +
                  ", factor " + w.base().to_string(res.factor(0, 0));
    }
  return r;
}

// ---- 6: nilpotence ----

inline CriterionResult criterion_6() {
  using namespace selftest;
  CriterionResult r{6, "nilpotence", true, ""};
  std::mt19937_64 rng(606);
  for (unsigned long p : {2ul, 3ul})
    for (std::size_t h : {2, 3}) {
      auto lt = lubin_tate(h, p);
      const WittRing& w = lt.witt;
      auto base = is_nilpotent(w, lt.display);
      Matrix<WittVector> I = witt_identity(w, h, lt.length);
      auto corner = is_nilpotent(w, make_display(w, h, h - 1, I));
      bool ok = base.kind == Nilpotence::Kind::Nilpotent && corner.kind == Nilpotence::Kind::NotNilpotent;
      r.pass = r.pass && ok;
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += "h=" + std::to_string(h) + " p=" + std::to_string(p) + ": " + base.to_string() + ", unit corner " +
                  corner.to_string();
    }
  auto lt = lubin_tate(2, 2);
  const WittRing& w = lt.witt;
  auto draw = witt_draw(w, lt.length);
  auto base = is_nilpotent(w, lt.display);
  auto cornerD = make_display(w, 2, 1, witt_identity(w, 2, lt.length));
  std::size_t same = 0;
  const std::size_t trials = 50;
  for (std::size_t t = 0; t < trials; ++t) {
    auto C = random_change(w, 2, 1, rng, draw);
    auto n1 = is_nilpotent(w, change_of_coords(w, lt.display, C).display);
    auto n2 = is_nilpotent(w, change_of_coords(w, cornerD, C).display);
    if (n1 == base && n2.kind == Nilpotence::Kind::NotNilpotent) ++same;
  }
  r.pass = r.pass && same == trials;
  r.detail += "; invariant under random changes " + fraction(same, trials);
  return r;
}

// ---- 7: duality ----

inline CriterionResult criterion_7() {
  using namespace selftest;
  CriterionResult r{7, "duality certificate", true, ""};
  std::mt19937_64 rng(707);
  std::size_t pairing = 0, bidual = 0, transpose = 0;
  const std::size_t trials = 20;
  for (std::size_t t = 0; t < trials; ++t) {
    unsigned long p = t % 2 ? 3 : 2;
    std::size_t h = 2 + (t / 2) % 2, d = 1 + rng() % (h - 1);
    const std::size_t N = 3;
    WittRing w(Ring::modular(Integer(p)), p);
    auto D = random_display(w, h, d, rng, witt_draw(w, N));
    std::vector<WittVector> scalars{w.one(N), random_witt(w, N, rng)};
    if (dual_pairing_failure(w, D, scalars).empty()) ++pairing;
    auto DD = dual(w, dual(w, D));
    auto exhibited = change_of_coords(w, DD, identity_change(w, h, DD.d, N));
    if (DD.d == D.d && witt_matrix_equal(w, exhibited.display.B, D.B)) ++bidual;
    if (dual_matches_transpose(w, D)) ++transpose;
  }
  r.pass = pairing == trials && bidual == trials && transpose == trials;
  r.detail = "pairing " + fraction(pairing, trials) + ", bidual via identity change " + fraction(bidual, trials) +
             ", Dieudonne transpose " + fraction(transpose, trials);
  return r;
}

// ---- 8: Dieudonne relations ----

inline CriterionResult criterion_8() {
  using namespace selftest;
  CriterionResult r{8, "Dieudonne relations", true, ""};
  std::mt19937_64 rng(808);
  std::vector<std::pair<Ring, unsigned long>> fields{{Ring::modular(2), 2},
                                                     {Ring::modular(3), 3},
                                                     {Ring::finite_field(2, 2), 2},
                                                     {Ring::finite_field(3, 2), 3}};
  std::size_t good = 0;
  const std::size_t trials = 50;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& [k, p] = fields[t % fields.size()];
    std::size_t h = 1 + (t / 4) % 3, N = 2 + t % 3, d = rng() % (h + 1);
    WittRing w(k, p);
    auto D = random_display(w, h, d, rng, witt_draw(w, N));
    if (check_fv(w, to_dieudonne(w, D))) ++good;
  }
  r.pass = good == trials;
  r.detail = "FV = VF = p over F_2, F_3, F_4, F_9 with h <= 3, N <= 4: " + fraction(good, trials);
  return r;
}

// ---- 9: tangent lift oracle ----

inline CriterionResult criterion_9() {
  CriterionResult r{9, "first-order deformation count", true, ""};
  struct Case {
    std::size_t h;
    unsigned long p;
    std::size_t N;
  };
  for (Case c : {Case{2, 2, 2}, Case{2, 3, 2}, Case{3, 2, 2}}) {
    auto inst = lubin_tate_fiber(c.h, c.p, c.N);
    auto res = tangent_lift_oracle(inst.witt, inst.display);
    bool ok = res.class_count == res.expected && res.expected == ipow(c.p, c.h - 1) && res.closed_form_matches;
    r.pass = r.pass && ok;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += "h=" + std::to_string(c.h) + " p=" + std::to_string(c.p) + " N=" + std::to_string(c.N) + ": " +
                std::to_string(res.class_count) + " classes of " + std::to_string(res.lift_count) + " lifts, expected " +
                std::to_string(res.expected) + ", closed form " + (res.closed_form_matches ? "matches" : "DIFFERS");
  }
  return r;
}

// ---- 10: etale criterion ----

inline CriterionResult criterion_10() {
  CriterionResult r{10, "etale criterion", true, ""};
  for (std::size_t h : {2, 3}) {
    auto lt = lubin_tate(h);
    const Ring& R = lt.witt.base();
    auto pt = projective_point(lt.witt, lt.display);
    auto single = jacobian_etale_check(R, chart_map(R, pt, 0));
    bool agree = true;
    std::size_t applicable = 0;
    for (const auto& c : etale_all_charts(R, pt)) {
      if (!c.applicable) continue;
      ++applicable;
      agree = agree && c.result.etale;
    }
    bool ok = single.etale && agree && applicable >= 1;
    r.pass = r.pass && ok;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += "Lubin-Tate h=" + std::to_string(h) + ": chart 0 " + (single.etale ? "etale" : "NOT etale") + ", " +
                std::to_string(applicable) + " applicable chart(s) " + (agree ? "agree" : "DISAGREE");
  }
  Ring R = lubin_tate_ring(2, 2, 4);
  auto sq = jacobian_etale_check(R, ChartMap{0, {R.pow(R.variable("u1"), 2ul)}});
  r.pass = r.pass && !sq.etale;
  r.detail += "; u1 -> u1^2: " + sq.reason;
  return r;
}

// ---- 11: Hopf algebroid ----

inline CriterionResult criterion_11() {
  CriterionResult r{11, "Hopf algebroid axioms", true, ""};
  for (unsigned long p : {2ul, 3ul}) {
    auto P = build_presentation(p, 2);
    auto ax = check_symbolic_axioms(P);
    auto cert = invariant_ideal_certificate(P);
    bool ok = ax.all() && cert.unit_is_unit && cert.identity_holds;
    r.pass = r.pass && ok;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += "symbolic p=" + std::to_string(p) + " N=2 " + (ax.all() ? "ok" : "FAIL") + ", eta_R(beta_0_22) = (" +
                P.Gamma.to_string(cert.unit) + ") beta_0_22 + p (...)";
  }
  for (unsigned long p : {3ul, 5ul})
    for (std::size_t h : {2, 3}) {
      auto ax = numeric_axioms(p, h, 3, 200, 1100 + p * 10 + h);
      r.pass = r.pass && ax.all();
      r.detail += "; F_" + std::to_string(p) + " h=" + std::to_string(h) + " N=3: " +
                  selftest::fraction(std::min({ax.counit, ax.composition, ax.coassociativity, ax.antipode, ax.factor}),
                                     ax.trials);
    }
  return r;
}

// ---- 12: period map ----

inline CriterionResult criterion_12() {
  CriterionResult r{12, "period map approximation", true, ""};
  for (std::size_t h : {2, 3})
    for (unsigned long p : {2ul, 3ul}) {
      auto PA = horizontal_sections(h, unsigned(p * p + 1), p);
      Ring Rp = period_ring(h, unsigned(p)), R1 = period_ring(h, 1);
      bool modp = truncate_order(PA.ring, PA.A, Rp) == expected_sections_mod_Jp(Rp, h);
      bool unipotent = truncate_order(PA.ring, PA.A, R1) == ring_identity(R1, h);
      bool ok = modp && unipotent && PA.residual_zero && PA.integral_mod_Jp;
      r.pass = r.pass && ok;
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += "h=" + std::to_string(h) + " p=" + std::to_string(p) + " M=" + std::to_string(p * p + 1) +
                  ": residual " + (PA.residual_zero ? "0" : "NONZERO") + ", mod J^p " + (modp ? "ok" : "FAIL") +
                  ", mod J " + (unipotent ? "I" : "FAIL") + ", p-integral " + (PA.integral_mod_Jp ? "yes" : "NO");
    }
  return r;
}

// ---- 13: determinism ----

inline const std::vector<CliFixture>& cli_fixtures() {
  static const std::vector<CliFixture> f{
      {{"witt", "add", "--p", "2", "--len", "2", "--ring", "Z", "--x", "[1,0]", "--y", "[1,0]"}},
      {{"witt", "mul", "--p", "3", "--len", "3", "--ring", "Z/27", "--x", "[1,2,0]", "--y", "[2,0,1]"}},
      {{"witt", "frob", "--p", "2", "--ring", "Z", "--x", "[3,1,2]"}},
      {{"witt", "versch", "--p", "3", "--ring", "GF(9)", "--x", "[\"z\",1]"}},
      {{"witt", "teich", "--p", "5", "--len", "3", "--ring", "Z", "--x", "2"}},
      {{"witt", "ghost", "--p", "2", "--ring", "Z[t]", "--x", "[\"t\",1,\"t^2\"]"}},
      {{"witt", "invert", "--p", "3", "--ring", "Z/27", "--x", "[2,1,1]"}},
      {{"display", "example", "lubin-tate-h3"}},
      {{"display", "point"}, 7},
      {{"display", "point", "--format", "text"}, 7},
      {{"display", "nilpotent"}, 7},
      {{"display", "dual"}, 7},
      {{"display", "check"}, 7},
      {{"display", "example", "zeta-action-h2"}},
      {{"display", "reduce-h2"}, 13},
      {{"display", "example", "lubin-tate-fiber-h2", "--p", "3"}},
      {{"dieudonne", "from-display"}, 15},
      {{"dieudonne", "check-fv"}, 15},
      {{"deform", "etale"}, 7},
      {{"deform", "tangent-oracle"}, 15},
      {{"deform", "etale", "--ring", "Z/4[u1]/(2,u1)^4", "--map", "u1^2"}},
      {{"moduli", "present", "--p", "2", "--len", "1"}},
      {{"moduli", "invariant-ideal", "--p", "3", "--len", "1"}},
      {{"period", "psi", "--h", "3", "--p", "2"}},
      {{"period", "sections", "--h", "2", "--order", "2", "--p", "3", "--format", "text"}},
      {{"period", "sections", "--h", "3", "--order", "5", "--p", "2"}},
      {{"period", "map", "--h", "3", "--order", "4", "--p", "3"}},
  };
  return f;
}

/// Runs every fixture twice and compares exit codes and output bytes. With
/// `include_selftest` the selftest command is also run twice.
inline CriterionResult criterion_13(const CliRunner& run, bool include_selftest) {
  CriterionResult r{13, "determinism", true, ""};
  const auto& fixtures = cli_fixtures();
  auto pass = [&]() {
    std::vector<CliOutcome> out;
    for (const auto& f : fixtures) out.push_back(run(f.args, f.pipe_from >= 0 ? out[std::size_t(f.pipe_from)].out : ""));
    return out;
  };
  auto a = pass(), b = pass();
  std::size_t same = 0, failed = 0;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    if (a[i].code == b[i].code && a[i].out == b[i].out) ++same;
    if (a[i].code != 0) ++failed;
  }
  r.pass = same == fixtures.size() && failed == 0;
  r.detail = "fixtures identical " + selftest::fraction(same, fixtures.size()) + ", nonzero exits " + std::to_string(failed);
  if (include_selftest) {
    auto s1 = run({"selftest"}, ""), s2 = run({"selftest"}, "");
    bool ok = s1.code == s2.code && s1.out == s2.out && !s1.out.empty();
    r.pass = r.pass && ok;
    r.detail += std::string(", selftest ") + (ok ? "identical" : "DIFFERS");
  }
  return r;
}

inline std::vector<CriterionResult> run_criteria(const CliRunner& run, bool include_selftest) {
  return {criterion_1(),  criterion_2(),  criterion_3(),  criterion_4(), criterion_5(),
          criterion_6(),  criterion_7(),  criterion_8(),  criterion_9(), criterion_10(),
          criterion_11(), criterion_12(), criterion_13(run, include_selftest)};
}

}  // namespace wdisp
