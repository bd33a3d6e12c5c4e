#include "bazext/resolve.hpp"

#include <algorithm>
#include <sstream>

namespace bzx {

namespace {

// column layout of the degree-t piece of a free module over B with the given
// generator list: one column per (algebra basis element b, generator g) with
// |b| + |g| = t
struct FreeSlice {
  struct Col {
    int alg_deg;
    int alg_idx;
    int gen;
  };
  std::vector<Col> cols;
  std::map<std::tuple<int, int, int>, int> index;  // (alg_deg, alg_idx, gen)

  static FreeSlice build(const Algebra& B, const std::vector<Resolution::Gen>& gens, int t) {
    FreeSlice s;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      int ad = t - gens[g].degree;
      if (ad < 0 || ad > B.cap()) continue;
      for (std::size_t i = 0; i < B.dim(ad); ++i) {
        s.index[{ad, int(i), int(g)}] = int(s.cols.size());
        s.cols.push_back({ad, int(i), int(g)});
      }
    }
    return s;
  }
};

}  // namespace

Resolution minimal_resolution(const ModulePresentation& m, AlgKind subalgebra, int s_max,
                              int t_max) {
  if (alg_prime(subalgebra) != m.prime)
    throw std::invalid_argument("minimal_resolution: module prime does not match subalgebra");
  if (t_max > m.truncation)
    throw ReliabilityError("minimal_resolution: t_max " + std::to_string(t_max) +
                           " exceeds the module truncation " + std::to_string(m.truncation));
  const Algebra& B = Algebra::get(subalgebra, t_max);
  const int p = m.prime;

  Resolution res;
  res.prime = p;
  res.subalgebra = subalgebra;
  res.s_max = s_max;
  res.t_max = t_max;
  res.reliable_t = std::min(t_max, m.truncation);
  res.gens.resize(s_max + 1);
  res.diff.resize(s_max + 1);

  // generator expressions in the closure basis (a generator may be a
  // combination of echelon basis elements in principle)
  std::vector<std::pair<int, Vec>> gen_coords;  // (degree, coords)
  for (const auto& g : B.generators()) {
    int gd = word_degree(p, g);
    gen_coords.emplace_back(gd, B.express(adem_normalize(p, g)));
  }

  // ---- stage 0: minimal generators of M ----
  for (int t = 0; t <= t_max; ++t) {
    if (m.dim(t) == 0) continue;
    EchelonSpan sub(p, m.dim(t));
    for (const auto& g : B.generators()) {
      int gd = word_degree(p, g);
      if (gd == 0 || gd > t || m.dim(t - gd) == 0) continue;
      for (std::size_t i = 0; i < m.dim(t - gd); ++i) {
        Vec unit(m.dim(t - gd), 0);
        unit[i] = 1;
        sub.insert(m.act_word(g, t - gd, unit));
      }
    }
    for (std::size_t i = 0; i < m.dim(t); ++i) {
      Vec unit(m.dim(t), 0);
      unit[i] = 1;
      if (sub.insert(unit)) {
        res.gens[0].push_back({t, m.basis[m.by_degree[t][i]].name});
        res.aug.push_back({{m.by_degree[t][i], 1}});
        res.diff[0].push_back({});
      }
    }
  }

  // cached differential coordinates: per stage-s generator, list of
  // (target generator, algebra coordinate vector)
  std::vector<std::vector<std::vector<std::pair<int, Vec>>>> dcoords(s_max + 1);
  dcoords[0].resize(res.gens[0].size());

  // matrix of d_s on degree-t slices (stage s -> s-1; stage -1 is the module)
  auto slice_matrix = [&](int s, int t, const FreeSlice& src, const FreeSlice& tgt) {
    std::size_t tgt_dim = s == 0 ? m.dim(t) : tgt.cols.size();
    FpMatrix mat(p, tgt_dim, src.cols.size());
    for (std::size_t c = 0; c < src.cols.size(); ++c) {
      const auto& col = src.cols[c];
      if (s == 0) {
        const auto& b = B.basis(col.alg_deg)[col.alg_idx];
        int gdeg = res.gens[0][col.gen].degree;
        Vec v(m.dim(gdeg), 0);
        for (const auto& [gl, cf] : res.aug[col.gen]) v[m.local_index(gl)] = cf;
        Vec img = m.act_words(b.words, gdeg, v);
        for (std::size_t r = 0; r < img.size(); ++r)
          if (img[r]) mat.set(r, c, img[r]);
      } else {
        for (const auto& [tgen, acoords] : dcoords[s][col.gen]) {
          int adeg = res.gens[s][col.gen].degree - res.gens[s - 1][tgen].degree;
          for (std::size_t ai = 0; ai < acoords.size(); ++ai) {
            if (!acoords[ai]) continue;
            const Vec& prod = B.mult(col.alg_deg, col.alg_idx, adeg, ai);
            for (std::size_t k = 0; k < prod.size(); ++k) {
              if (!prod[k]) continue;
              auto it = tgt.index.find({col.alg_deg + adeg, int(k), tgen});
              if (it == tgt.index.end()) continue;
              mat.add_at(it->second, std::size_t(c),
                         static_cast<uint8_t>((prod[k] * acoords[ai]) % p));
            }
          }
        }
      }
    }
    return mat;
  };

  for (int s = 1; s <= s_max; ++s) {
    std::vector<std::vector<Vec>> kernels(t_max + 1);
    std::vector<FreeSlice> slices(t_max + 1);
    for (int t = 0; t <= t_max; ++t) {
      slices[t] = FreeSlice::build(B, res.gens[s - 1], t);
      if (slices[t].cols.empty()) continue;
      FreeSlice tgt = s >= 2 ? FreeSlice::build(B, res.gens[s - 2], t) : FreeSlice{};
      FpMatrix d_prev = slice_matrix(s - 1, t, slices[t], tgt);
      kernels[t] = kernel_basis(d_prev);
      if (kernels[t].empty()) continue;

      // span of B^+ . K inside this slice: generators applied to kernels of
      // lower degree
      EchelonSpan covered(p, slices[t].cols.size());
      for (const auto& [gd, gc] : gen_coords) {
        if (gd == 0 || gd > t) continue;
        for (const auto& kv : kernels[t - gd]) {
          Vec up(slices[t].cols.size(), 0);
          for (std::size_t gi = 0; gi < gc.size(); ++gi) {
            if (!gc[gi]) continue;
            for (std::size_t c = 0; c < kv.size(); ++c) {
              if (!kv[c]) continue;
              const auto& col = slices[t - gd].cols[c];
              const Vec& prod = B.mult(gd, gi, col.alg_deg, col.alg_idx);
              for (std::size_t k = 0; k < prod.size(); ++k) {
                if (!prod[k]) continue;
                auto it = slices[t].index.find({gd + col.alg_deg, int(k), col.gen});
                if (it == slices[t].index.end()) continue;
                up[it->second] = static_cast<uint8_t>(
                    (up[it->second] + gc[gi] * prod[k] * kv[c]) % p);
              }
            }
          }
          covered.insert(up);
        }
      }

      int counter = 0;
      for (const auto& kv : kernels[t]) {
        if (!covered.insert(kv)) continue;
        std::string name =
            "g" + std::to_string(s) + "_" + std::to_string(t) + "_" + std::to_string(counter++);
        res.gens[s].push_back({t, name});
        std::map<int, std::map<std::pair<int, int>, uint8_t>> per_gen;
        for (std::size_t c = 0; c < kv.size(); ++c)
          if (kv[c])
            per_gen[slices[t].cols[c].gen][{slices[t].cols[c].alg_deg,
                                            slices[t].cols[c].alg_idx}] = kv[c];
        std::vector<std::pair<int, SteenrodElement>> entry;
        std::vector<std::pair<int, Vec>> coords_entry;
        for (const auto& [tgen, coef_map] : per_gen) {
          int adeg = t - res.gens[s - 1][tgen].degree;
          if (adeg == 0)
            throw std::runtime_error("minimal_resolution: unit coefficient in a differential");
          Vec acoords(B.dim(adeg), 0);
          SteenrodElement elt(p);
          for (const auto& [di, cf] : coef_map) {
            acoords[di.second] = cf;
            for (const auto& [w, wc] : B.basis(di.first)[di.second].nf.terms())
              elt.add_term(w, wc * cf);
          }
          entry.emplace_back(tgen, std::move(elt));
          coords_entry.emplace_back(tgen, std::move(acoords));
        }
        res.diff[s].push_back(std::move(entry));
        dcoords[s].push_back(std::move(coords_entry));
      }
    }
  }
  return res;
}

void verify_resolution(const Resolution& r, const ModulePresentation& m) {
  const Algebra& B = Algebra::get(r.subalgebra, r.t_max);
  const int p = r.prime;
  // d_{s-1} o d_s = 0, expanded symbolically
  for (int s = 2; s <= r.s_max; ++s) {
    for (std::size_t g = 0; g < r.gens[s].size(); ++g) {
      std::map<std::pair<int, Word>, int> acc;
      for (const auto& [mid, a] : r.diff[s][g])
        for (const auto& [tgt, b] : r.diff[s - 1][mid]) {
          SteenrodElement pr = product(a, b);
          for (const auto& [w, c] : pr.terms()) {
            auto key = std::make_pair(tgt, w);
            acc[key] = ((acc[key] + c) % p + p) % p;
          }
        }
      for (const auto& [key, c] : acc)
        if (c)
          throw std::runtime_error("verify_resolution: d o d != 0 at stage " + std::to_string(s));
    }
  }
  // d_1 followed by the augmentation vanishes in the module
  if (r.s_max >= 1)
    for (std::size_t g = 0; g < r.gens[1].size(); ++g) {
      Vec total(m.dim(r.gens[1][g].degree), 0);
      for (const auto& [tgen, a] : r.diff[1][g]) {
        Vec v(m.dim(r.gens[0][tgen].degree), 0);
        for (const auto& [gl, cf] : r.aug[tgen]) v[m.local_index(gl)] = cf;
        Vec coords = B.express(a);
        for (std::size_t i = 0; i < coords.size(); ++i) {
          if (!coords[i]) continue;
          Vec part =
              m.act_words(B.basis(a.degree())[i].words, r.gens[0][tgen].degree, v);
          for (std::size_t j = 0; j < total.size(); ++j)
            total[j] = static_cast<uint8_t>((total[j] + coords[i] * part[j]) % p);
        }
      }
      for (uint8_t c : total)
        if (c) throw std::runtime_error("verify_resolution: d1 followed by augmentation != 0");
    }
}

ExtChart ext_chart(const Resolution& r) {
  ExtChart c;
  c.prime = r.prime;
  c.subalgebra = r.subalgebra;
  c.s_max = r.s_max;
  c.t_max = r.t_max;
  c.reliable_t = r.reliable_t;
  for (int s = 0; s <= r.s_max; ++s)
    for (const auto& g : r.gens[s]) c.dims[{s, g.degree}] += 1;
  const auto& al = chart_aliases(r.subalgebra);
  for (const auto& [pos, name] : al)
    if (c.dims.count(pos)) c.aliases[pos] = name;
  return c;
}

const std::map<std::pair<int, int>, std::string>& chart_aliases(AlgKind k) {
  static const std::map<std::pair<int, int>, std::string> a1 = {
      {{1, 1}, "h0"}, {{1, 2}, "h1"}, {{2, 4}, "h1^2"}, {{3, 7}, "v"}, {{4, 12}, "w"}};
  static const std::map<std::pair<int, int>, std::string> a2 = {
      {{1, 1}, "h0"},  {{1, 2}, "h1"}, {{1, 4}, "h2"}, {{2, 2}, "h1^2"}, {{2, 8}, "h2^2"},
      {{3, 11}, "c0"}, {{4, 12}, "w"}, {{3, 15}, "t"}, {{4, 18}, "d0"}};
  static const std::map<std::pair<int, int>, std::string> a3 = {
      {{1, 1}, "a0"},    {{1, 4}, "h10"},      {{1, 12}, "h11"},
      {{2, 9}, "P0h0"},  {{2, 12}, "b0"},      {{2, 13}, "a0h11"},
      {{3, 13}, "a0b0"}, {{3, 14}, "a0^2h11"}, {{3, 16}, "b0h10"}};
  static const std::map<std::pair<int, int>, std::string> none = {};
  switch (k) {
    case AlgKind::A1: return a1;
    case AlgKind::A2: return a2;
    case AlgKind::A3: return a3;
    default: return none;
  }
}

std::string chart_tsv(const ExtChart& c) {
  std::ostringstream os;
  os << "# ext-chart prime=" << c.prime << " subalgebra=" << alg_name(c.subalgebra)
     << " smax=" << c.s_max << " tmax=" << c.t_max << " reliable_t=" << c.reliable_t << "\n";
  os << "s\tt\tdim\taliases\n";
  for (const auto& [pos, d] : c.dims) {
    os << pos.first << "\t" << pos.second << "\t" << d << "\t";
    auto it = c.aliases.find(pos);
    os << (it == c.aliases.end() ? "-" : it->second) << "\n";
  }
  return os.str();
}

ExtChart chart_from_tsv(const std::string& text) {
  ExtChart c;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "prime") c.prime = std::stoi(val);
        if (key == "subalgebra") c.subalgebra = alg_from_name(val);
        if (key == "smax") c.s_max = std::stoi(val);
        if (key == "tmax") c.t_max = std::stoi(val);
        if (key == "reliable_t") c.reliable_t = std::stoi(val);
      }
      continue;
    }
    if (line.rfind("s\t", 0) == 0) continue;
    std::istringstream ls(line);
    int s, t, d;
    std::string alias;
    if (!(ls >> s >> t >> d)) throw std::invalid_argument("chart tsv: bad row: " + line);
    if (ls >> alias && alias != "-") c.aliases[{s, t}] = alias;
    if (d) c.dims[{s, t}] = d;
  }
  return c;
}

std::string chart_svg(const ExtChart& c) {
  // one dot per generator at lattice position (t-s, s), stems horizontal
  const int cell = 24, margin = 36, r = 3;
  int stems = 0;
  for (const auto& [pos, d] : c.dims) {
    (void)d;
    stems = std::max(stems, pos.second - pos.first);
  }
  int smax = c.s_max;
  int w = margin * 2 + cell * (stems + 1);
  int h = margin * 2 + cell * (smax + 1);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  for (int x = 0; x <= stems; ++x)
    os << "<text x=\"" << margin + x * cell << "\" y=\"" << h - margin / 3
       << "\" font-size=\"9\" text-anchor=\"middle\">" << x << "</text>\n";
  for (int s = 0; s <= smax; ++s)
    os << "<text x=\"" << margin / 3 << "\" y=\"" << h - margin - s * cell + 3
       << "\" font-size=\"9\" text-anchor=\"middle\">" << s << "</text>\n";
  for (const auto& [pos, d] : c.dims) {
    int stem = pos.second - pos.first;
    if (stem < 0) continue;
    for (int i = 0; i < d; ++i) {
      int dx = (i % 2 == 0 ? -1 : 1) * ((i + 1) / 2) * (2 * r + 1);
      os << "<circle cx=\"" << margin + stem * cell + dx << "\" cy=\""
         << h - margin - pos.first * cell << "\" r=\"" << r << "\" fill=\"black\"/>\n";
    }
    auto it = c.aliases.find(pos);
    if (it != c.aliases.end())
      os << "<text x=\"" << margin + stem * cell << "\" y=\""
         << h - margin - pos.first * cell - 6 << "\" font-size=\"8\" text-anchor=\"middle\">"
         << it->second << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string chart_diff(const ExtChart& a, const ExtChart& b) {
  if (a.prime != b.prime) throw std::invalid_argument("chart_diff: different primes");
  int smax = std::min(a.s_max, b.s_max);
  int tmax = std::min({a.t_max, b.t_max, a.reliable_t, b.reliable_t});
  std::ostringstream os;
  for (int s = 0; s <= smax; ++s)
    for (int t = 0; t <= tmax; ++t)
      if (a.dim(s, t) != b.dim(s, t))
        os << "(" << s << "," << t << "): " << a.dim(s, t) << " != " << b.dim(s, t) << "\n";
  return os.str();
}

}  // namespace bzx
