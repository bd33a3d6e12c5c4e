#include "bazext/ahss.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bzx {

void FgAbelianGroup::canonicalize() {
  orders.erase(std::remove(orders.begin(), orders.end(), 1), orders.end());
  for (long long o : orders)
    if (o < 0) throw std::invalid_argument("FgAbelianGroup: orders must be 0 or >= 2");
  std::sort(orders.begin(), orders.end());
}

int FgAbelianGroup::free_rank() const {
  int r = 0;
  for (long long o : orders) r += (o == 0);
  return r;
}

long long FgAbelianGroup::order() const {
  long long prod = 1;
  for (long long o : orders) {
    if (o == 0) return 0;
    prod *= o;
  }
  return prod;
}

std::string FgAbelianGroup::str() const {
  if (orders.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) os << "+";
    if (orders[i] == 0)
      os << "Z";
    else
      os << "Z" << orders[i];
  }
  return os.str();
}

FgAbelianGroup tensor(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  // Z_a (x) Z_b = Z_gcd(a,b), with Z = Z_0 and gcd(0,b) = b
  FgAbelianGroup out;
  for (long long x : a.orders)
    for (long long y : b.orders) {
      long long g = std::gcd(x, y);
      if (g != 1) out.orders.push_back(g);
    }
  out.canonicalize();
  return out;
}

FgAbelianGroup tor_product(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  // Tor(Z_a, Z_b) = Z_gcd(a,b) on finite orders; Tor(Z, -) = 0
  FgAbelianGroup out;
  for (long long x : a.orders)
    for (long long y : b.orders) {
      if (x == 0 || y == 0) continue;
      long long g = std::gcd(x, y);
      if (g != 1) out.orders.push_back(g);
    }
  out.canonicalize();
  return out;
}

const AhssEntry* AhssPage::find(int p, int q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? nullptr : &it->second;
}

long long AhssPage::order_at(int p, int q) const {
  const AhssEntry* e = find(p, q);
  return e ? e->g.order() : 1;
}

AhssPage e2_page(const std::map<int, FgAbelianGroup>& homology,
                 const std::map<int, FgAbelianGroup>& coefficients) {
  AhssPage page;
  std::set<int> ps;
  for (const auto& [p, g] : homology) {
    (void)g;
    ps.insert(p);
    ps.insert(p + 1);
  }
  for (int p : ps)
    for (const auto& [q, piq] : coefficients) {
      FgAbelianGroup g;
      auto hit = homology.find(p);
      if (hit != homology.end()) g = tensor(hit->second, piq);
      auto prev = homology.find(p - 1);
      if (prev != homology.end())
        for (long long o : tor_product(prev->second, piq).orders) g.orders.push_back(o);
      g.canonicalize();
      if (!g.is_zero()) page.entries[{p, q}] = {g, true};
    }
  return page;
}

namespace {

FpMatrix action_matrix(const ModulePresentation& m, const std::string& key, int deg) {
  int gd = m.gen_degree_of(key);
  if (deg + gd > m.truncation)
    throw LedgerError("rule needs a Steenrod action above the module truncation (degree " +
                      std::to_string(deg) + ")");
  FpMatrix mat(2, m.dim(deg + gd), m.dim(deg));
  for (std::size_t i = 0; i < m.dim(deg); ++i) {
    Vec unit(m.dim(deg), 0);
    unit[i] = 1;
    Vec img = m.act_gen(key, deg, unit);
    for (std::size_t r = 0; r < img.size(); ++r)
      if (img[r]) mat.set(r, i, img[r]);
  }
  return mat;
}

std::vector<Vec> image_vectors(const FpMatrix& a) {
  std::vector<Vec> out;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Vec unit(a.cols(), 0);
    unit[c] = 1;
    out.push_back(a.apply(unit));
  }
  return out;
}

// dim of (im A + W)/W
std::size_t rank_mod_subspace(const FpMatrix& a, const std::vector<Vec>& w) {
  EchelonSpan span(2, a.rows());
  for (const auto& v : w) span.insert(v);
  std::size_t base = span.size();
  for (const auto& v : image_vectors(a)) span.insert(v);
  return span.size() - base;
}

int count_twos(const FgAbelianGroup& g) {
  int n = 0;
  for (long long o : g.orders) n += (o == 2);
  return n;
}

void strip_twos(AhssEntry& e, int k, const std::string& where) {
  if (k == 0) return;
  if (count_twos(e.g) < k)
    throw LedgerError("rule differential does not fit the entry at " + where);
  for (int i = 0; i < k; ++i)
    e.g.orders.erase(std::find(e.g.orders.begin(), e.g.orders.end(), 2));
}

void require_exponent_two(const std::map<int, FgAbelianGroup>& homology) {
  for (const auto& [p, g] : homology) {
    (void)p;
    for (long long o : g.orders)
      if (o > 0 && o % 2 == 0 && o != 2)
        throw LedgerError(
            "sq2 rule needs all even torsion of exponent 2 (it identifies the "
            "integral-reduction annihilator with im Sq^1)");
  }
}

int dim_h_mod2(const std::map<int, FgAbelianGroup>& homology, int p) {
  // dim H_p(X;F_2) = rank(H_p) + #2-torsion(H_p) + #2-torsion(H_{p-1})
  int d = 0;
  auto it = homology.find(p);
  if (it != homology.end())
    for (long long o : it->second.orders) d += (o == 0 || o % 2 == 0);
  it = homology.find(p - 1);
  if (it != homology.end())
    for (long long o : it->second.orders) d += (o > 0 && o % 2 == 0);
  return d;
}

void drop_empty(AhssPage& page) {
  for (auto it = page.entries.begin(); it != page.entries.end();)
    it = it->second.g.is_zero() ? page.entries.erase(it) : std::next(it);
}

}  // namespace

void apply_sq2_rule(AhssPage& page, const std::map<int, FgAbelianGroup>& homology,
                    const ModulePresentation& mod2, std::vector<std::string>* log) {
  require_exponent_two(homology);
  int pmax = 0;
  for (const auto& [p, g] : homology) {
    (void)g;
    pmax = std::max(pmax, p);
  }
  for (int p = 0; p <= std::min(pmax, mod2.truncation); ++p)
    if (int(mod2.dim(p)) != dim_h_mod2(homology, p))
      throw LedgerError("sq2 rule: module and homology table disagree in degree " +
                        std::to_string(p));

  std::map<int, int> rank1, rank0;  // indexed by the source column p
  for (int p = 2; p <= pmax && p <= mod2.truncation; ++p) {
    FpMatrix sq2 = action_matrix(mod2, "Sq2", p - 2);
    rank1[p] = int(rank(sq2));
    std::vector<Vec> ann;
    if (mod2.dim(p - 1)) ann = image_vectors(action_matrix(mod2, "Sq1", p - 1));
    rank0[p] = int(rank_mod_subspace(sq2, ann));
    if (log && (rank0[p] || rank1[p]))
      log->push_back("rule d2 from p=" + std::to_string(p) + ": row-0 rank " +
                     std::to_string(rank0[p]) + ", row-1 rank " + std::to_string(rank1[p]));
  }
  for (auto& [pq, e] : page.entries) {
    auto [p, q] = pq;
    if (q == 0) {
      int r = rank0.count(p) ? rank0[p] : 0;
      if (!r) continue;
      int twos = count_twos(e.g);
      if (twos >= r && e.g.free_rank() == 0) {
        strip_twos(e, r, "(p,0) kernel");
      } else if (twos == 0 && e.g.free_rank() >= r) {
        // free summands carry the image; kernel is free of the same rank
      } else if (twos + e.g.free_rank() >= r) {
        strip_twos(e, std::min(twos, r), "(p,0) kernel");
        e.exact = false;  // order right, splitting between free and Z_2 unknown
      } else {
        throw LedgerError("row-0 d2 rank exceeds the entry at p=" + std::to_string(p));
      }
    } else if (q == 1) {
      int out_rank = rank1.count(p) ? rank1[p] : 0;
      int in_rank = rank0.count(p + 2) ? rank0[p + 2] : 0;
      strip_twos(e, out_rank + in_rank, "row 1 at p=" + std::to_string(p));
    } else if (q == 2) {
      int in_rank = rank1.count(p + 2) ? rank1[p + 2] : 0;
      strip_twos(e, in_rank, "row 2 at p=" + std::to_string(p));
    }
  }
  drop_empty(page);
}

void apply_ko_d3_rule(AhssPage& page, const std::map<int, FgAbelianGroup>& homology,
                      const ModulePresentation& mod2, std::vector<std::string>* log) {
  require_exponent_two(homology);
  int pmax = 0;
  for (const auto& [p, g] : homology) {
    (void)g;
    pmax = std::max(pmax, p);
  }
  std::map<int, int> rank3;  // keyed by the target degree p of d3 : (p+3,2) -> (p,4)
  for (int p = 0; p + 3 <= pmax && p + 3 <= mod2.truncation; ++p) {
    if (mod2.dim(p) == 0 || mod2.dim(p + 3) == 0) continue;
    FpMatrix sq2sq1 = action_matrix(mod2, "Sq2", p + 1).mul(action_matrix(mod2, "Sq1", p));
    int r = int(rank(sq2sq1));
    if (!r) continue;
    auto hp = homology.find(p);
    if (hp != homology.end() && hp->second.free_rank() > 0)
      throw LedgerError("ko d3 rule: free part in the target degree makes the rank ambiguous");
    rank3[p] = r;
    if (log)
      log->push_back("rule d3 (ko) into p=" + std::to_string(p) + ": rank " + std::to_string(r));
  }
  for (auto& [pq, e] : page.entries) {
    auto [p, q] = pq;
    if (q == 4 && rank3.count(p)) strip_twos(e, rank3[p], "ko row 4 at p=" + std::to_string(p));
    if (q == 2 && rank3.count(p - 3))
      strip_twos(e, rank3[p - 3], "ko row 2 at p=" + std::to_string(p));
  }
  drop_empty(page);
}

// ---------------------------------------------------------------------------

namespace {

FgAbelianGroup parse_orders(const nlohmann::json& arr, long long s) {
  FgAbelianGroup g;
  for (const auto& v : arr) {
    if (v.is_string()) {
      if (v.get<std::string>() != "s")
        throw std::invalid_argument("scenario: unknown symbolic order " + v.get<std::string>());
      g.orders.push_back(s);
    } else {
      g.orders.push_back(v.get<long long>());
    }
  }
  g.canonicalize();
  return g;
}

Assertion parse_assertion(const nlohmann::json& j) {
  Assertion a;
  a.page = j.at("page").get<int>();
  a.sp = j.at("source")[0].get<int>();
  a.sq = j.at("source")[1].get<int>();
  a.tp = j.at("target")[0].get<int>();
  a.tq = j.at("target")[1].get<int>();
  a.image_order = j.at("rank").get<long long>();
  if (j.contains("note")) a.note = j["note"].get<std::string>();
  if (a.tp != a.sp - a.page || a.tq != a.sq + a.page - 1)
    throw LedgerError("assertion has wrong bidegree for page " + std::to_string(a.page) + ": (" +
                      std::to_string(a.sp) + "," + std::to_string(a.sq) + ") -> (" +
                      std::to_string(a.tp) + "," + std::to_string(a.tq) + ")");
  return a;
}

Expectation parse_expect(const nlohmann::json& j, long long s) {
  Expectation e;
  if (j.contains("page")) {
    if (j["page"].is_string())
      e.page = -1;
    else
      e.page = j["page"].get<int>();
  }
  e.p = j.at("entry")[0].get<int>();
  e.q = j.at("entry")[1].get<int>();
  e.g = parse_orders(j.at("orders"), s);
  return e;
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Scenario sc;
  sc.name = j.value("name", "scenario");
  sc.provenance = j.value("provenance", "");
  sc.s = j.value("s", 7);
  if (sc.s <= 0 || (sc.s % 6 != 1 && sc.s % 6 != 5))
    throw std::invalid_argument("scenario: s must be positive and +-1 mod 6");
  for (auto it = j.at("homology").begin(); it != j.at("homology").end(); ++it)
    sc.homology[std::stoi(it.key())] = parse_orders(it.value(), sc.s);
  for (auto it = j.at("coefficients").begin(); it != j.at("coefficients").end(); ++it)
    sc.coefficients[std::stoi(it.key())] = parse_orders(it.value(), sc.s);
  sc.sq2_module = j.value("sq2_module", "");
  if (j.contains("rules"))
    for (const auto& r : j["rules"])
      if (r.get<std::string>() == "ko_d3") sc.ko_rules = true;
  if (j.contains("assertions"))
    for (const auto& a : j["assertions"]) sc.assertions.push_back(parse_assertion(a));
  if (j.contains("expect"))
    for (const auto& e : j["expect"]) sc.expects.push_back(parse_expect(e, sc.s));
  if (j.contains("claims"))
    for (const auto& c : j["claims"])
      sc.claims.push_back({c.at("degree").get<int>(), c.at("total_order").get<long long>()});
  if (j.contains("branches"))
    for (const auto& b : j["branches"]) {
      ScenarioBranch br;
      br.name = b.value("name", "branch");
      if (b.contains("assertions"))
        for (const auto& a : b["assertions"]) br.assertions.push_back(parse_assertion(a));
      if (b.contains("expect"))
        for (const auto& e : b["expect"]) br.expects.push_back(parse_expect(e, sc.s));
      if (b.contains("claims"))
        for (const auto& c : b["claims"])
          br.claims.push_back({c.at("degree").get<int>(), c.at("total_order").get<long long>()});
      sc.branches.push_back(std::move(br));
    }
  if (j.contains("report_totals")) {
    sc.report_min_total = j["report_totals"][0].get<int>();
    sc.report_max_total = j["report_totals"][1].get<int>();
  }
  return sc;
}

namespace {

void apply_assertion(AhssPage& page, const Assertion& a) {
  auto src = page.entries.find({a.sp, a.sq});
  auto tgt = page.entries.find({a.tp, a.tq});
  std::string label = "d" + std::to_string(a.page) + ": (" + std::to_string(a.sp) + "," +
                      std::to_string(a.sq) + ") -> (" + std::to_string(a.tp) + "," +
                      std::to_string(a.tq) + ")" + (a.note.empty() ? "" : " [" + a.note + "]");
  if (src == page.entries.end()) throw LedgerError("assertion source vanished: " + label);
  if (tgt == page.entries.end()) throw LedgerError("assertion target vanished: " + label);
  auto strip = [&](AhssEntry& e, const char* side) {
    auto it = std::find(e.g.orders.begin(), e.g.orders.end(), a.image_order);
    if (it != e.g.orders.end()) {
      e.g.orders.erase(it);
      return;
    }
    for (auto& o : e.g.orders)
      if (o > 0 && o % a.image_order == 0) {
        o /= a.image_order;
        e.exact = false;
        e.g.canonicalize();
        return;
      }
    throw LedgerError(std::string("asserted image does not divide the ") + side + ": " + label);
  };
  strip(src->second, "source");
  strip(tgt->second, "target");
  drop_empty(page);
}

void run_branch(const Scenario& sc, const ScenarioBranch& br, const AhssPage& e2,
                const ModulePresentation* mod2, std::ostringstream& text, nlohmann::json& jout,
                bool& ok) {
  AhssPage page = e2;
  std::vector<std::string> log;
  std::vector<Assertion> all = sc.assertions;
  all.insert(all.end(), br.assertions.begin(), br.assertions.end());
  std::vector<Expectation> expects = sc.expects;
  expects.insert(expects.end(), br.expects.begin(), br.expects.end());
  std::vector<Claim> claims = sc.claims;
  claims.insert(claims.end(), br.claims.begin(), br.claims.end());

  text << "== branch: " << br.name << "\n";
  nlohmann::json jb;
  jb["name"] = br.name;
  jb["expect"] = nlohmann::json::array();
  jb["claims"] = nlohmann::json::array();

  auto check_expect = [&](int page_no, const AhssPage& pg) {
    for (const auto& e : expects) {
      if (e.page != page_no) continue;
      const AhssEntry* got = pg.find(e.p, e.q);
      FgAbelianGroup g = got ? got->g : FgAbelianGroup{};
      bool pass = g == e.g;
      ok &= pass;
      text << (pass ? "  PASS" : "  FAIL") << " E"
           << (page_no < 0 ? std::string("inf") : std::to_string(page_no)) << "^{" << e.p << ","
           << e.q << "} = " << g.str() << " (expected " << e.g.str() << ")\n";
      jb["expect"].push_back({{"page", page_no},
                              {"entry", {e.p, e.q}},
                              {"got", g.str()},
                              {"want", e.g.str()},
                              {"pass", pass}});
    }
  };

  int maxpage = 4;
  for (const auto& a : all) maxpage = std::max(maxpage, a.page);
  check_expect(2, page);
  for (int r = 2; r <= maxpage; ++r) {
    for (const auto& a : all) {
      if (a.page != r) continue;
      apply_assertion(page, a);
      text << "  applied d" << r << " (" << a.sp << "," << a.sq << ") -> (" << a.tp << "," << a.tq
           << ") image order " << a.image_order << (a.note.empty() ? "" : "  [" + a.note + "]")
           << "\n";
    }
    if (r == 2 && mod2) apply_sq2_rule(page, sc.homology, *mod2, &log);
    if (r == 3 && mod2 && sc.ko_rules) apply_ko_d3_rule(page, sc.homology, *mod2, &log);
    check_expect(r + 1, page);
  }
  for (const auto& l : log) text << "  " << l << "\n";
  check_expect(-1, page);

  for (int total = sc.report_min_total; total <= sc.report_max_total; ++total) {
    text << "  E_inf on p+q = " << total << ":";
    for (int p = 0; p <= total; ++p) {
      const AhssEntry* e = page.find(p, total - p);
      if (!e) continue;
      text << "  (" << p << "," << total - p << ") " << e->g.str() << (e->exact ? "" : "~");
      jb["einf"][std::to_string(total)].push_back(
          {{"p", p}, {"q", total - p}, {"group", e->g.str()}, {"exact", e->exact}});
    }
    text << "\n";
  }
  for (const auto& c : claims) {
    long long prod = 1;
    bool infinite = false;
    for (int p = 0; p <= c.degree; ++p) {
      long long o = page.order_at(p, c.degree - p);
      if (o == 0) infinite = true;
      prod *= std::max(o, 1LL);
    }
    bool pass = !infinite && prod == c.total_order;
    ok &= pass;
    text << (pass ? "  PASS" : "  FAIL") << " order accounting in degree " << c.degree
         << ": product " << (infinite ? std::string("infinite") : std::to_string(prod))
         << " vs claimed " << c.total_order << "\n";
    jb["claims"].push_back({{"degree", c.degree},
                            {"claimed", c.total_order},
                            {"computed", infinite ? 0 : prod},
                            {"pass", pass}});
  }
  jout["branches"].push_back(std::move(jb));
}

}  // namespace

ReplayReport replay(const Scenario& sc) {
  ReplayReport rep;
  std::ostringstream text;
  nlohmann::json jout;
  jout["name"] = sc.name;
  jout["s"] = sc.s;
  jout["branches"] = nlohmann::json::array();
  jout["e2"] = nlohmann::json::array();
  text << "scenario " << sc.name << " (s = " << sc.s << ")\n";
  if (!sc.provenance.empty()) text << "  " << sc.provenance << "\n";

  AhssPage e2 = e2_page(sc.homology, sc.coefficients);
  text << "E_2 entries with p+q in [" << sc.report_min_total << "," << sc.report_max_total
       << "]:\n";
  for (const auto& [pq, e] : e2.entries) {
    int total = pq.first + pq.second;
    if (total < sc.report_min_total || total > sc.report_max_total) continue;
    text << "  E_2^{" << pq.first << "," << pq.second << "} = " << e.g.str() << "\n";
    jout["e2"].push_back({{"p", pq.first}, {"q", pq.second}, {"group", e.g.str()}});
  }

  ModulePresentation mod2;
  bool have_mod = false;
  if (!sc.sq2_module.empty()) {
    if (sc.sq2_module.rfind("builtin:", 0) == 0)
      mod2 = builtin_module(sc.sq2_module.substr(8));
    else
      mod2 = load_module(sc.sq2_module);
    have_mod = true;
  }

  bool ok = true;
  std::vector<ScenarioBranch> branches = sc.branches;
  if (branches.empty()) branches.push_back({"default", {}, {}, {}});
  for (const auto& br : branches) run_branch(sc, br, e2, have_mod ? &mod2 : nullptr, text, jout, ok);

  rep.ok = ok;
  jout["ok"] = ok;
  text << (ok ? "REPLAY OK\n" : "REPLAY FAILED\n");
  rep.text = text.str();
  rep.json = jout.dump(1);
  return rep;
}

}  // namespace bzx
