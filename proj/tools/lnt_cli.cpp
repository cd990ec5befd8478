// Command-line front end: expression expansion, component-wise ideal
// membership, certificate production, and the full verification suite.
//
// Exit codes follow the membership verdicts: 0 MEMBER / all checks pass,
// 1 NOT_MEMBER / a check failed, 2 usage or parse problem, 3 TORSION,
// 4 a verification step was skipped for budget reasons.

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lnt/elim.hpp"
#include "lnt/families.hpp"
#include "lnt/identities.hpp"
#include "lnt/parse.hpp"
#include "lnt/reduce.hpp"
#include "lnt/span_builder.hpp"
#include "lnt/verbal.hpp"

namespace {

using namespace lnt;
using nlohmann::json;

// Largest component dimension the membership command will eliminate on the
// spot. Multilinear degree 7 (5040 monomials) is the intended ceiling; a
// degree-8 multilinear component is eight times wider and not worth blocking
// a batch run for.
constexpr std::size_t kMemberDimCap = 5040;

enum class RingKind { INT, RAT, MODP };

struct RingChoice {
  RingKind kind = RingKind::INT;
  std::uint32_t p = 0;
  std::string label = "Z";
};

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

RingChoice ring_from_flag(const std::string& s) {
  if (s == "Z") return {RingKind::INT, 0, "Z"};
  if (s == "Q") return {RingKind::RAT, 0, "Q"};
  if (s.size() > 1 && s[0] == 'F') {
    std::uint64_t p = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      char c = s[i];
      if (c < '0' || c > '9')
        throw std::invalid_argument("unknown ring '" + s + "' (expected Z, Q or Fp)");
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
      if (p > 0x7fffffffULL) throw std::invalid_argument("modulus in '" + s + "' is too large");
    }
    if (!is_prime_u64(p)) throw std::invalid_argument("modulus in '" + s + "' is not prime");
    return {RingKind::MODP, static_cast<std::uint32_t>(p), "F" + std::to_string(p)};
  }
  throw std::invalid_argument("unknown ring '" + s + "' (expected Z, Q or Fp)");
}

// --cache-dir beats the environment variable, which beats "no cache".
std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("LNT_CACHE_DIR")) return env;
  return "";
}

std::string mdeg_text(const Multidegree& d) {
  std::string s;
  for (const auto& [v, k] : d) {
    if (!s.empty()) s += "*";
    s += var_name(v);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s.empty() ? std::string("1") : s;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------------------
// expand

template <class R>
int run_expand(const R& rg, const std::string& expr) {
  Poly<R> p = parse_poly(rg, expr);
  std::cout << format_poly(p) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// member

struct ComponentReport {
  std::string mdeg;
  Verdict verdict = Verdict::NOT_MEMBER;
  BigInt torsion{1};
  json combination;  // null unless requested and derivable
};

// Moves a homogeneous component onto the canonical letters x1..xm. The
// relabeling is monotone, so span membership questions transfer verbatim.
template <class R>
Poly<R> canonical_component(const R& rg, const Poly<R>& comp, const Multidegree& md) {
  std::map<Var, Var> rename;
  Var next = 1;
  for (const auto& [v, k] : md) rename[v] = next++;
  Poly<R> out(rg);
  for (const auto& [w, c] : comp.terms) {
    std::vector<Var> letters;
    letters.reserve(w.letters.size());
    for (Var v : w.letters) letters.push_back(rename.at(v));
    out.add_term(Word(std::move(letters)), c);
  }
  return out;
}

template <class R>
MembershipResult<R> component_membership(const R& rg, SpanBuilder& sb, const IdealSpec& spec,
                                         const Multidegree& cmd, const SparseVec<R>& target,
                                         bool want_coeffs) {
  if constexpr (R::tag == RingTag::INT) {
    return lattice_membership(sb.echelon_int(spec, cmd), target, want_coeffs);
  } else if constexpr (R::tag == RingTag::RAT) {
    auto rows = rows_to_ring(rg, sb.echelon_rat(spec, cmd));
    return field_membership(rg, rows, target, want_coeffs);
  } else {
    return field_membership(rg, sb.echelon_mod(rg, spec, cmd), target, want_coeffs);
  }
}

template <class R>
int run_member(const R& rg, const RingChoice& rc, const std::string& expr, const IdealSpec& spec,
               const std::string& cache_dir, const std::string& cert_path) {
  Poly<R> p = parse_poly(rg, expr);
  const bool want_cert = !cert_path.empty();

  std::map<Multidegree, Poly<R>> components;
  for (const auto& [w, c] : p.terms) {
    auto [it, fresh] = components.try_emplace(multidegree_of(w), Poly<R>(rg));
    it->second.add_term(w, c);
  }

  SpanBuilder sb(cache_dir);
  std::vector<ComponentReport> reports;
  for (const auto& [md, comp] : components) {
    Multidegree cmd = canonical_mdeg(md);
    ComponentBasis basis = component_basis(cmd);
    if (basis.size() > kMemberDimCap) {
      std::cerr << "component " << mdeg_text(md) << " spans " << basis.size()
                << " monomials, above the built-in limit of " << kMemberDimCap
                << "; split the query or use the certificate tooling instead\n";
      return 2;
    }
    Poly<R> canon = canonical_component(rg, comp, md);
    SparseVec<R> target = vectorize(canon, basis);
    MembershipResult<R> res = component_membership(rg, sb, spec, cmd, target, want_cert);

    ComponentReport rep;
    rep.mdeg = mdeg_text(md);
    rep.verdict = res.verdict;
    rep.torsion = res.torsion_index;
    if (want_cert && !res.coeffs.empty()) {
      json comb = json::array();
      for (const auto& [row, c] : res.coeffs)
        comb.push_back({{"row", row}, {"coeff", rg.str(c)}});
      rep.combination = std::move(comb);
    }
    reports.push_back(std::move(rep));
  }

  // A zero polynomial has no components and is trivially a member.
  Verdict overall = Verdict::MEMBER;
  BigInt torsion{1};
  for (const auto& rep : reports) {
    if (rep.verdict == Verdict::NOT_MEMBER) overall = Verdict::NOT_MEMBER;
    if (rep.verdict == Verdict::TORSION && overall != Verdict::NOT_MEMBER) {
      overall = Verdict::TORSION;
      torsion = lcm(torsion, rep.torsion);
    }
  }

  if (reports.size() > 1)
    for (const auto& rep : reports) {
      std::cout << "component " << rep.mdeg << ": " << verdict_name(rep.verdict);
      if (rep.verdict == Verdict::TORSION) std::cout << " " << rep.torsion.str();
      std::cout << "\n";
    }

  if (want_cert) {
    json out;
    out["expression"] = expr;
    out["spec"] = spec.name;
    out["ring"] = rc.label;
    json comps = json::array();
    for (const auto& rep : reports) {
      json jc;
      jc["multidegree"] = rep.mdeg;
      jc["verdict"] = verdict_name(rep.verdict);
      if (rep.verdict == Verdict::TORSION) jc["torsion_index"] = rep.torsion.str();
      if (!rep.combination.is_null()) {
        jc["combination"] = rep.combination;
        jc["rows"] = "canonical echelon rows of " + spec.name + " at " + jc["multidegree"].get<std::string>() +
                     " over " + rc.label + ", in order";
      }
      comps.push_back(std::move(jc));
    }
    out["components"] = std::move(comps);
    out["verdict"] = verdict_name(overall);
    std::ofstream f(cert_path);
    f << out.dump(2) << "\n";
  }

  switch (overall) {
    case Verdict::MEMBER:
      std::cout << "MEMBER\n";
      return 0;
    case Verdict::NOT_MEMBER:
      std::cout << "NOT_MEMBER\n";
      return 1;
    case Verdict::TORSION:
      std::cout << "TORSION " << torsion.str() << "\n";
      return 3;
  }
  return 2;
}

// ---------------------------------------------------------------------------
// reduce

int run_reduce(const std::string& form_text, const std::vector<std::string>& arg_texts,
               const std::string& json_path) {
  FormId f = form_from_name(form_text);
  if (arg_texts.size() != static_cast<std::size_t>(form_arity(f))) {
    std::cerr << form_name(f) << " takes " << form_arity(f) << " slot arguments, got "
              << arg_texts.size() << "\n";
    return 2;
  }
  IntRing Z;
  std::vector<Word> slots;
  for (const std::string& s : arg_texts) {
    Poly<IntRing> p = parse_poly(Z, s);
    if (p.terms.size() != 1 || !(p.terms.begin()->second == BigInt(1)) ||
        p.terms.begin()->first.is_one()) {
      std::cerr << "slot argument '" << s << "' must be a nonempty monomial like x1 or x1*x2\n";
      return 2;
    }
    slots.push_back(p.terms.begin()->first);
  }
  Certificate cert = reduce_form(f, slots);
  if (!verify_certificate(cert)) {
    std::cerr << "internal error: certificate failed its self-check\n";
    return 1;
  }
  std::string text = cert_to_json(cert);
  if (json_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(json_path);
    out << text << "\n";
    std::cout << "certificate with " << cert.terms.size() << " terms written to " << json_path
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify-theorem

struct CheckRecord {
  std::string id;
  std::string status = "PASS";  // PASS / FAIL / SKIPPED
  std::string note;
  long ms = 0;
};

class CheckList {
 public:
  // A quiet list buffers its records; used by worker threads so lines never
  // interleave. The merged records are printed by the owner afterwards.
  bool quiet = false;

  // Runs fn, times it, and stores one record. fn returns pass/fail plus note.
  void run(const std::string& id, const std::function<std::pair<bool, std::string>()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CheckRecord rec;
    rec.id = id;
    try {
      auto [ok, note] = fn();
      rec.status = ok ? "PASS" : "FAIL";
      rec.note = note;
    } catch (const std::exception& e) {
      rec.status = "FAIL";
      rec.note = std::string("exception: ") + e.what();
    }
    rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                 .count();
    if (!quiet) print(rec);
    records.push_back(std::move(rec));
  }

  void skip(const std::string& id, const std::string& why) {
    CheckRecord rec;
    rec.id = id;
    rec.status = "SKIPPED";
    rec.note = why;
    if (!quiet) print(rec);
    records.push_back(std::move(rec));
  }

  static void print(const CheckRecord& rec) {
    std::cout << "[" << rec.status << "] " << rec.id;
    if (!rec.note.empty()) std::cout << "  " << rec.note;
    if (rec.status != "SKIPPED") std::cout << "  (" << rec.ms << " ms)";
    std::cout << "\n";
  }

  std::vector<CheckRecord> records;
};

// Independent jobs executed on a small pool; each job owns its slot in a
// pre-sized output vector, so the assembled order never depends on timing.
void run_jobs(int threads, std::vector<std::function<void()>>& jobs) {
  if (threads <= 1 || jobs.size() <= 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      jobs[i]();
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(threads, static_cast<int>(jobs.size()));
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

template <class R>
std::pair<bool, std::string> derivation_check(const R& rg) {
  auto report = run_derivation_suite(rg, split_identity_entries());
  if (suite_all_zero(report))
    return {true, std::to_string(report.size()) + " identities, every residual is zero"};
  std::string bad;
  for (const auto& e : report)
    if (e.residual_terms != 0) {
      bad = e.id + " leaves " + std::to_string(e.residual_terms) + " terms";
      break;
    }
  return {false, bad};
}

// All multidegrees on canonical letters with the given total degree, i.e.
// partition shapes; every component of that degree is a monotone relabeling
// of exactly one of them.
std::vector<Multidegree> canonical_mdegs_of_degree(std::uint32_t deg) {
  std::vector<Multidegree> out;
  std::vector<std::uint32_t> parts;
  auto rec = [&](auto&& self, std::uint32_t left, std::uint32_t maxpart) -> void {
    if (left == 0) {
      Multidegree d;
      Var v = 1;
      for (std::uint32_t k : parts) d[v++] = k;
      out.push_back(std::move(d));
      return;
    }
    for (std::uint32_t k = std::min(left, maxpart); k >= 1; --k) {
      parts.push_back(k);
      self(self, left - k, k);
      parts.pop_back();
    }
  };
  rec(rec, deg, deg);
  return out;
}

// Compositions of n into exactly five positive parts, in lex order.
std::vector<std::array<std::uint32_t, 5>> five_part_compositions(std::uint32_t n) {
  std::vector<std::array<std::uint32_t, 5>> out;
  for (std::uint32_t a = 1; a + 4 <= n; ++a)
    for (std::uint32_t b = 1; a + b + 3 <= n; ++b)
      for (std::uint32_t c = 1; a + b + c + 2 <= n; ++c)
        for (std::uint32_t d = 1; a + b + c + d + 1 <= n; ++d)
          out.push_back({a, b, c, d, n - a - b - c - d});
  return out;
}

struct TheoremOptions {
  int max_degree = 8;
  bool with_int = true;
  bool with_rat = true;
  std::vector<std::uint32_t> primes = {2, 3, 5, 7, 11, 101};
  int threads = 1;
  std::string cache_dir;
  std::string json_path;
};

// The fields the run verifies certificates over, in a fixed order.
std::vector<RingChoice> field_list(const TheoremOptions& opt) {
  std::vector<RingChoice> fields;
  if (opt.with_rat) fields.push_back({RingKind::RAT, 0, "Q"});
  for (std::uint32_t p : opt.primes) fields.push_back({RingKind::MODP, p, "F" + std::to_string(p)});
  return fields;
}

bool verify_cert_over(const RingChoice& rc, const Certificate& cert) {
  switch (rc.kind) {
    case RingKind::INT:
      return verify_certificate(cert);
    case RingKind::RAT: {
      RatRing rg;
      return verify_certificate_over(rg, cert);
    }
    case RingKind::MODP: {
      ModRing rg(rc.p);
      return verify_certificate_over(rg, cert);
    }
  }
  return false;
}

bool verify_verbal_over_choice(const RingChoice& rc, const VerbalCertificate& cert) {
  switch (rc.kind) {
    case RingKind::INT:
      return verify_verbal(cert);
    case RingKind::RAT: {
      RatRing rg;
      return verify_verbal_over(rg, cert);
    }
    case RingKind::MODP: {
      ModRing rg(rc.p);
      return verify_verbal_over(rg, cert);
    }
  }
  return false;
}

// One family instance at distinct letters, viewed in the requested ring and
// tested against the verbal ideal's span of its multilinear component.
template <class R>
Verdict family_span_verdict(const R& rg, SpanBuilder& sb, const IdealSpec& t5, Family f) {
  int n = family_arity(f);
  std::vector<Poly<R>> args;
  args.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) args.push_back(Poly<R>::var(rg, static_cast<Var>(i)));
  Poly<R> inst = family_poly(f, args);
  Multidegree md = multilinear_mdeg(static_cast<std::uint32_t>(n));
  ComponentBasis basis = component_basis(md);
  SparseVec<R> target = vectorize(inst, basis);
  return component_membership(rg, sb, t5, md, target, false).verdict;
}

int run_verify_theorem(const TheoremOptions& opt) {
  const auto& specs = builtin_specs();
  const IdealSpec& T5 = specs.at("T5");
  const IdealSpec& I5 = specs.at("I5");
  const int span_cap = std::min(opt.max_degree, 7);
  auto t_start = std::chrono::steady_clock::now();

  CheckList list;

  // Derivation catalog first: everything downstream leans on these rewrites.
  list.run("derivations/Z", [] { IntRing rg; return derivation_check(rg); });
  list.run("derivations/F2", [] { ModRing rg(2); return derivation_check(rg); });
  list.run("derivations/F3", [] { ModRing rg(3); return derivation_check(rg); });

  // Per-ring jobs run on builders of their own and meet through the disk
  // cache, so a cache directory is required; use a scratch one when the
  // caller gave none.
  std::string cache_dir = opt.cache_dir;
  if (cache_dir.empty()) {
    auto scratch = std::filesystem::temp_directory_path() /
                   ("lnt-spans-" + std::to_string(static_cast<unsigned long>(::getpid())));
    std::filesystem::create_directories(scratch);
    cache_dir = scratch.string();
  }

  // Warm the integer echelons serially; the field views below derive from
  // them, and the disk cache makes later phases and reruns cheap.
  SpanBuilder sb(cache_dir);
  for (int d = 5; d <= span_cap; ++d)
    sb.echelon_int(T5, multilinear_mdeg(static_cast<std::uint32_t>(d)));

  // Families against the verbal ideal's spans, one record per family per ring.
  struct FamilyDeg {
    Family f;
    int deg;
  };
  const std::vector<FamilyDeg> fam_degs = {
      {Family::F1, 5}, {Family::F2, 6}, {Family::F3, 7}, {Family::F4, 6},
      {Family::F5, 7}, {Family::F6, 6}, {Family::F7, 7}, {Family::F8, 8}};

  std::vector<RingChoice> rings;
  if (opt.with_int) rings.push_back({RingKind::INT, 0, "Z"});
  for (const RingChoice& rc : field_list(opt)) rings.push_back(rc);

  {
    std::vector<CheckList> partial(rings.size());
    for (auto& pl : partial) pl.quiet = true;
    std::vector<std::function<void()>> jobs;
    for (std::size_t i = 0; i < rings.size(); ++i) {
      jobs.push_back([&, i] {
        const RingChoice& rc = rings[i];
        SpanBuilder local(cache_dir);
        for (const auto& [f, deg] : fam_degs) {
          if (deg > span_cap) continue;
          partial[i].run(std::string("family/") + family_name(f) + "/" + rc.label, [&] {
            Verdict v;
            switch (rc.kind) {
              case RingKind::INT: {
                IntRing rg;
                v = family_span_verdict(rg, local, T5, f);
                break;
              }
              case RingKind::RAT: {
                RatRing rg;
                v = family_span_verdict(rg, local, T5, f);
                break;
              }
              case RingKind::MODP: {
                ModRing rg(rc.p);
                v = family_span_verdict(rg, local, T5, f);
                break;
              }
            }
            return std::pair<bool, std::string>(
                v == Verdict::MEMBER,
                "degree-" + std::to_string(deg) + " instance, verdict " + verdict_name(v));
          });
        }
        if (opt.max_degree >= 8) {
          partial[i].run(std::string("family/F8/") + rc.label, [&] {
            std::vector<Poly<IntRing>> args;
            IntRing Z;
            for (Var v = 1; v <= 8; ++v) args.push_back(Poly<IntRing>::var(Z, v));
            VerbalCertificate cert = verbal_family(Family::F8, args);
            bool ok = verify_verbal_over_choice(rc, cert);
            return std::pair<bool, std::string>(
                ok, "degree-8 instance certified by substitution witness, " +
                        std::to_string(cert.terms.size()) + " terms");
          });
        }
      });
    }
    run_jobs(opt.threads, jobs);
    for (std::size_t i = 0; i < rings.size(); ++i)
      for (auto& rec : partial[i].records) {
        CheckList::print(rec);
        list.records.push_back(std::move(rec));
      }
  }

  // Span equality of the literal and verbal ideals, multilinear components.
  for (int d = 5; d <= span_cap; ++d) {
    list.run("equality/ml" + std::to_string(d) + "/Z", [&] {
      Multidegree md = multilinear_mdeg(static_cast<std::uint32_t>(d));
      const auto& a = sb.echelon_int(I5, md);
      const auto& b = sb.echelon_int(T5, md);
      bool ok = a == b;
      return std::pair<bool, std::string>(
          ok, ok ? "canonical integer echelons coincide, rank " + std::to_string(a.size()) +
                       "; equality transfers to Q and every F_p"
                 : "canonical integer echelons differ");
    });
  }

  if (opt.max_degree >= 8) {
    std::vector<RingChoice> fields = field_list(opt);

    list.run("equality/ml8/verbal-in-literal", [&] {
      auto shapes = five_part_compositions(8);
      Reducer red;
      std::size_t certified = 0;
      for (const auto& sh : shapes) {
        std::vector<Word> slots;
        Var next = 1;
        for (std::uint32_t len : sh) {
          std::vector<Var> letters;
          for (std::uint32_t j = 0; j < len; ++j) letters.push_back(next++);
          slots.emplace_back(std::move(letters));
        }
        Certificate cert = red.reduce(FormId::COMM5, slots);
        if (!verify_certificate(cert))
          return std::pair<bool, std::string>(false, "shape certificate failed over Z");
        for (const RingChoice& rc : fields)
          if (!verify_cert_over(rc, cert))
            return std::pair<bool, std::string>(false, "shape certificate failed over " + rc.label);
        ++certified;
      }
      return std::pair<bool, std::string>(
          true, std::to_string(certified) +
                    " slot-degree shapes certified over every requested ring; other degree-8 "
                    "cores are letter renamings of these, and bordered cores follow from the "
                    "degree-7 equality");
    });

    list.run("equality/ml8/literal-in-verbal", [&] {
      IntRing Z;
      std::size_t verified = 0;
      for (Family f : {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5, Family::F6,
                       Family::F7, Family::F8}) {
        std::vector<Poly<IntRing>> args;
        for (Var v = 1; v <= static_cast<Var>(family_arity(f)); ++v)
          args.push_back(Poly<IntRing>::var(Z, v));
        VerbalCertificate cert = verbal_family(f, args);
        if (!verify_verbal(cert))
          return std::pair<bool, std::string>(false,
                                              std::string(family_name(f)) + " witness failed over Z");
        for (const RingChoice& rc : fields)
          if (!verify_verbal_over_choice(rc, cert))
            return std::pair<bool, std::string>(
                false, std::string(family_name(f)) + " witness failed over " + rc.label);
        ++verified;
      }
      // Spot-check the substitution closure: the degree-8 witness stays valid
      // after renaming its letters.
      std::mt19937 gen(20240820);
      std::vector<Poly<IntRing>> args;
      for (Var v = 1; v <= 8; ++v) args.push_back(Poly<IntRing>::var(Z, v));
      VerbalCertificate base = verbal_family(Family::F8, args);
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<Var> perm(8);
        for (Var v = 0; v < 8; ++v) perm[v] = v + 1;
        std::shuffle(perm.begin(), perm.end(), gen);
        std::map<Var, Poly<IntRing>> images;
        for (Var v = 1; v <= 8; ++v) images.emplace(v, Poly<IntRing>::var(Z, perm[v - 1]));
        VerbalCertificate moved = verbal_substitute(base, images);
        if (!verify_verbal(moved))
          return std::pair<bool, std::string>(false, "relabeled degree-8 witness failed");
      }
      return std::pair<bool, std::string>(
          true, std::to_string(verified) +
                    " generator witnesses verified over every requested ring, plus 3 relabeled "
                    "degree-8 samples; word substitutions preserve the identities");
    });
  }

  for (int d = 9; d <= opt.max_degree; ++d)
    list.skip("equality/ml" + std::to_string(d),
              "degree exceeds the certified budget; rerun with a dedicated span cache if needed");

  // Regressions for the smaller verbal ideals and their generator lists.
  auto echelons_match_int = [&](const IdealSpec& a, const IdealSpec& b, int lo, int hi,
                                std::string& note) {
    std::size_t comps = 0;
    for (int d = lo; d <= hi; ++d)
      for (const Multidegree& md : canonical_mdegs_of_degree(static_cast<std::uint32_t>(d))) {
        if (sb.echelon_int(a, md) != sb.echelon_int(b, md)) {
          note = "echelons differ at " + mdeg_text(md);
          return false;
        }
        ++comps;
      }
    note = std::to_string(comps) + " components match over Z";
    return true;
  };

  list.run("regression/G3=T3/Z", [&] {
    std::string note;
    bool ok = echelons_match_int(specs.at("G3"), specs.at("T3"), 3, std::min(opt.max_degree, 5), note);
    return std::pair<bool, std::string>(ok, note);
  });
  list.run("regression/G4_5=T4/Z", [&] {
    std::string note;
    bool ok =
        echelons_match_int(specs.at("G4_5"), specs.at("T4"), 4, std::min(opt.max_degree, 6), note);
    return std::pair<bool, std::string>(ok, note);
  });

  {
    std::vector<RingChoice> g43_fields;
    if (opt.with_rat) g43_fields.push_back({RingKind::RAT, 0, "Q"});
    for (std::uint32_t p : opt.primes)
      if (p != 3) g43_fields.push_back({RingKind::MODP, p, "F" + std::to_string(p)});
    for (const RingChoice& rc : g43_fields) {
      list.run("regression/G4_3=T4/" + rc.label, [&] {
        std::size_t comps = 0;
        for (int d = 4; d <= std::min(opt.max_degree, 6); ++d)
          for (const Multidegree& md : canonical_mdegs_of_degree(static_cast<std::uint32_t>(d))) {
            bool same;
            if (rc.kind == RingKind::RAT) {
              same = sb.echelon_rat(specs.at("G4_3"), md) == sb.echelon_rat(specs.at("T4"), md);
            } else {
              ModRing rg(rc.p);
              same = sb.echelon_mod(rg, specs.at("G4_3"), md) == sb.echelon_mod(rg, specs.at("T4"), md);
            }
            if (!same)
              return std::pair<bool, std::string>(false, "echelons differ at " + mdeg_text(md));
            ++comps;
          }
        return std::pair<bool, std::string>(true, std::to_string(comps) + " components match");
      });
    }
  }

  if (std::find(opt.primes.begin(), opt.primes.end(), 3u) != opt.primes.end()) {
    list.run("regression/T4<G4_3/F3", [&] {
      // The three-generator list describes the verbal ideal only once 3 is
      // invertible. Mod 3 its span at the degree-5 multilinear component is
      // one dimension larger: it picks up the product of a 2-commutator and
      // a 3-commutator, which the verbal ideal contains only after scaling
      // by 3.
      ModRing rg(3);
      Multidegree md = multilinear_mdeg(5);
      const auto& g = sb.echelon_mod(rg, specs.at("G4_3"), md);
      const auto& t = sb.echelon_mod(rg, specs.at("T4"), md);
      auto rel = span_equal(rg, g, t);
      if (rel.relation != SpanRelation::A_NOT_IN_B)
        return std::pair<bool, std::string>(false,
                                            "expected a strict inclusion, spans compare otherwise");
      ModEchelon eg(rg, false);
      for (const auto& v : g) eg.add(v);
      for (const auto& v : t)
        if (!eg.reduces_to_zero(v))
          return std::pair<bool, std::string>(false, "verbal span escapes the generator span");
      std::vector<Poly<ModRing>> tail = {Poly<ModRing>::var(rg, 3), Poly<ModRing>::var(rg, 4),
                                         Poly<ModRing>::var(rg, 5)};
      Poly<ModRing> w =
          bracket(Poly<ModRing>::var(rg, 1), Poly<ModRing>::var(rg, 2)) * left_normed(tail);
      SparseVec<ModRing> wit = vectorize(w, component_basis(md));
      bool in_t = field_membership(rg, t, wit, false).verdict == Verdict::MEMBER;
      bool in_g = field_membership(rg, g, wit, false).verdict == Verdict::MEMBER;
      if (in_t || !in_g)
        return std::pair<bool, std::string>(false, "witness membership pattern is wrong");
      return std::pair<bool, std::string>(
          true,
          "strict inclusion detected as expected; [x1,x2][x3,x4,x5] separates the spans");
    });
  }

  // Randomized certificate production, checked against the span machinery.
  list.run("reducer/random", [&] {
    std::mt19937 gen(20240819);
    Reducer red;
    const std::vector<FormId> forms = {FormId::COMM5,  FormId::P33,   FormId::P43,
                                       FormId::P42,    FormId::P322,  FormId::C2211,
                                       FormId::P2212,  FormId::P2222};
    std::size_t lattice_checked = 0;
    ModRing f5(5);
    for (int trial = 0; trial < 100; ++trial) {
      FormId f = forms[gen() % forms.size()];
      int arity = form_arity(f);
      // One composite slot keeps instances nontrivial without blowing up the
      // total degree; letters may repeat across slots.
      int fat = static_cast<int>(gen() % static_cast<unsigned>(arity));
      std::vector<Word> slots;
      for (int i = 0; i < arity; ++i) {
        std::size_t len = (i == fat) ? 2 : 1;
        std::vector<Var> letters;
        for (std::size_t j = 0; j < len; ++j)
          letters.push_back(static_cast<Var>(1 + gen() % 9));
        slots.emplace_back(std::move(letters));
      }
      Certificate cert = red.reduce(f, slots);
      if (!verify_certificate(cert))
        return std::pair<bool, std::string>(false, "trial " + std::to_string(trial) + " failed over Z");
      if (!verify_certificate_over(f5, cert))
        return std::pair<bool, std::string>(false,
                                            "trial " + std::to_string(trial) + " failed over F5");
      // Multilinear targets of moderate degree can be cross-checked against
      // the literal ideal's lattice.
      if (!cert.target.is_zero()) {
        Multidegree md = multidegree_of(cert.target.terms.begin()->first);
        std::uint32_t deg = static_cast<std::uint32_t>(total_degree(md));
        if (is_multilinear(md) && deg >= 5 && deg <= 7) {
          IntRing Z;
          Poly<IntRing> canon = canonical_component(Z, cert.target, md);
          Multidegree cmd = canonical_mdeg(md);
          SparseVec<IntRing> target = vectorize(canon, component_basis(cmd));
          if (lattice_membership(sb.echelon_int(I5, cmd), target, false).verdict != Verdict::MEMBER)
            return std::pair<bool, std::string>(
                false, "trial " + std::to_string(trial) + " disagrees with the lattice");
          ++lattice_checked;
        }
      }
    }
    return std::pair<bool, std::string>(
        true, "100 random instances certified over Z and F5, " + std::to_string(lattice_checked) +
                  " cross-checked against the lattice");
  });

  // Summary and report.
  long total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
  std::size_t failed = 0, skipped = 0;
  for (const auto& rec : list.records) {
    if (rec.status == "FAIL") ++failed;
    if (rec.status == "SKIPPED") ++skipped;
  }
  std::cout << "verify-theorem: " << list.records.size() << " checks, "
            << (list.records.size() - failed - skipped) << " passed, " << failed << " failed, "
            << skipped << " skipped (" << total_ms << " ms)\n";

  if (!opt.json_path.empty()) {
    json out;
    out["suite"] = "verify-theorem";
    json env;
    env["max_degree"] = opt.max_degree;
    json ring_names = json::array();
    if (opt.with_int) ring_names.push_back("Z");
    if (opt.with_rat) ring_names.push_back("Q");
    env["rings"] = std::move(ring_names);
    json primes = json::array();
    for (std::uint32_t p : opt.primes) primes.push_back(p);
    env["primes"] = std::move(primes);
    env["threads"] = opt.threads;
    env["cache_dir"] = opt.cache_dir;
    out["environment"] = std::move(env);
    json checks = json::array();
    for (const auto& rec : list.records) {
      json jc;
      jc["id"] = rec.id;
      jc["status"] = rec.status;
      jc["note"] = rec.note;
      jc["ms"] = rec.ms;
      checks.push_back(std::move(jc));
    }
    out["checks"] = std::move(checks);
    out["pass"] = failed == 0 && skipped == 0;
    std::ofstream f(opt.json_path);
    f << out.dump(2) << "\n";
  }

  if (failed > 0) return 1;
  if (skipped > 0) return 4;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculator for verbal ideals of the free associative ring"};
  app.require_subcommand(1);

  std::string ring_flag = "Z";
  std::string cache_flag;

  auto* expand = app.add_subcommand("expand", "parse an expression and print its canonical form");
  std::string expand_expr;
  expand->add_option("expr", expand_expr, "expression, e.g. \"[x1,x2]*x3\"")->required();
  expand->add_option("--ring", ring_flag, "coefficient ring: Z, Q or Fp")->capture_default_str();

  auto* member = app.add_subcommand("member", "decide membership in a built-in ideal");
  std::string member_expr, member_spec, member_cert;
  member->add_option("expr", member_expr, "expression to test")->required();
  member->add_option("spec", member_spec, "ideal name: T2, T3, T4, T5, I5, G3, G4_3, G4_5")
      ->required();
  member->add_option("--ring", ring_flag, "coefficient ring: Z, Q or Fp")->capture_default_str();
  member->add_option("--cache-dir", cache_flag, "directory for span caches (or LNT_CACHE_DIR)");
  member->add_option("--cert", member_cert, "write a membership report with coefficients here");

  auto* reduce = app.add_subcommand("reduce", "produce a verified membership certificate");
  std::string reduce_form, reduce_json;
  std::vector<std::string> reduce_args;
  reduce->add_option("form", reduce_form, "form name: COMM5, P33, P43, P42, P322, C2211, P2212, P2222")
      ->required();
  reduce->add_option("args", reduce_args, "slot monomials, e.g. x1 x2*x3 x4 ...");
  reduce->add_option("--json", reduce_json, "write the certificate here instead of stdout");

  auto* verify = app.add_subcommand("verify-theorem", "run the full verification suite");
  TheoremOptions opt;
  std::string rings_csv = "Z,Q";
  std::string primes_csv = "2,3,5,7,11,101";
  verify->add_option("--max-degree", opt.max_degree, "top total degree for the span checks")
      ->capture_default_str();
  verify->add_option("--rings", rings_csv, "comma list drawn from Z,Q")->capture_default_str();
  verify->add_option("--primes", primes_csv, "comma list of primes for F_p checks, may be empty")
      ->capture_default_str();
  verify->add_option("--threads", opt.threads, "worker threads for independent ring checks")
      ->capture_default_str();
  verify->add_option("--cache-dir", cache_flag, "directory for span caches (or LNT_CACHE_DIR)");
  verify->add_option("--json", opt.json_path, "write the machine-readable report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*expand) {
      RingChoice rc = ring_from_flag(ring_flag);
      switch (rc.kind) {
        case RingKind::INT: {
          IntRing rg;
          return run_expand(rg, expand_expr);
        }
        case RingKind::RAT: {
          RatRing rg;
          return run_expand(rg, expand_expr);
        }
        case RingKind::MODP: {
          ModRing rg(rc.p);
          return run_expand(rg, expand_expr);
        }
      }
    }

    if (*member) {
      RingChoice rc = ring_from_flag(ring_flag);
      const auto& specs = builtin_specs();
      auto it = specs.find(member_spec);
      if (it == specs.end()) {
        std::cerr << "unknown spec '" << member_spec << "'; choices:";
        for (const auto& name : builtin_spec_names()) std::cerr << " " << name;
        std::cerr << "\n";
        return 2;
      }
      std::string cache = resolve_cache_dir(cache_flag);
      switch (rc.kind) {
        case RingKind::INT: {
          IntRing rg;
          return run_member(rg, rc, member_expr, it->second, cache, member_cert);
        }
        case RingKind::RAT: {
          RatRing rg;
          return run_member(rg, rc, member_expr, it->second, cache, member_cert);
        }
        case RingKind::MODP: {
          ModRing rg(rc.p);
          return run_member(rg, rc, member_expr, it->second, cache, member_cert);
        }
      }
    }

    if (*reduce) return run_reduce(reduce_form, reduce_args, reduce_json);

    if (*verify) {
      if (opt.max_degree < 5) {
        std::cerr << "--max-degree must be at least 5\n";
        return 2;
      }
      opt.with_int = false;
      opt.with_rat = false;
      for (const std::string& r : split_csv(rings_csv)) {
        if (r == "Z")
          opt.with_int = true;
        else if (r == "Q")
          opt.with_rat = true;
        else {
          std::cerr << "--rings entries must be Z or Q; use --primes for F_p\n";
          return 2;
        }
      }
      opt.primes.clear();
      for (const std::string& p : split_csv(primes_csv)) {
        std::uint64_t n = 0;
        for (char c : p) {
          if (c < '0' || c > '9') {
            std::cerr << "--primes entries must be integers\n";
            return 2;
          }
          n = n * 10 + static_cast<std::uint64_t>(c - '0');
          if (n > 0x7fffffffULL) break;
        }
        if (!is_prime_u64(n)) {
          std::cerr << "--primes entry " << p << " is not a prime below 2^31\n";
          return 2;
        }
        opt.primes.push_back(static_cast<std::uint32_t>(n));
      }
      if (opt.threads < 1) opt.threads = 1;
      opt.cache_dir = resolve_cache_dir(cache_flag);
      return run_verify_theorem(opt);
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
