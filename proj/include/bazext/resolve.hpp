#pragma once

// Minimal free resolutions over A(1), A(2), or the truncated full mod-3
// algebra, and the Ext charts they produce.  Minimality makes the stage-s
// generator count in internal degree t equal dim Ext^{s,t}.

#include <map>
#include <string>
#include <vector>

#include "bazext/modbuild.hpp"
#include "bazext/steenrod.hpp"

namespace bzx {

struct ReliabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Resolution {
  int prime = 2;
  AlgKind subalgebra = AlgKind::A2;
  int s_max = 0, t_max = 0;
  int reliable_t = 0;  // results valid for internal degree t <= reliable_t
  struct Gen {
    int degree;
    std::string name;
  };
  std::vector<std::vector<Gen>> gens;  // per stage 0..s_max
  // differential d_s(gen) for s >= 1: list of (stage s-1 generator, coefficient)
  std::vector<std::vector<std::vector<std::pair<int, SteenrodElement>>>> diff;
  // stage-0 augmentation: generator -> module basis vector (global indices+coeff)
  std::vector<std::vector<std::pair<int, uint8_t>>> aug;
};

Resolution minimal_resolution(const ModulePresentation& m, AlgKind subalgebra, int s_max,
                              int t_max);

// d o d = 0 on every computed stage (throws on failure); used by the tests
void verify_resolution(const Resolution& r, const ModulePresentation& m);

struct ExtChart {
  int prime = 2;
  AlgKind subalgebra = AlgKind::A2;
  int s_max = 0, t_max = 0, reliable_t = 0;
  std::map<std::pair<int, int>, int> dims;             // (s,t) -> dim, zero omitted
  std::map<std::pair<int, int>, std::string> aliases;  // paper names by position

  int dim(int s, int t) const {
    auto it = dims.find({s, t});
    return it == dims.end() ? 0 : it->second;
  }
};

ExtChart ext_chart(const Resolution& r);

// the alias data: (s,t) -> name, per (prime, subalgebra)
const std::map<std::pair<int, int>, std::string>& chart_aliases(AlgKind k);

std::string chart_tsv(const ExtChart& c);
ExtChart chart_from_tsv(const std::string& text);
std::string chart_svg(const ExtChart& c);
// empty string iff equal within the common reliability region
std::string chart_diff(const ExtChart& a, const ExtChart& b);

}  // namespace bzx
