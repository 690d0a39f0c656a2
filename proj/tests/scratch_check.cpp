// Development smoke harness; superseded by the doctest suites.
#include <cmath>
#include <cstdio>

#include "gwish/special.hpp"

using namespace gwish;

static int fails = 0;
static void check(const char* name, double got, double want, double rtol) {
  double rel = std::abs(got - want) / std::max(1e-300, std::abs(want));
  if (!(rel <= rtol)) {
    std::printf("FAIL %-28s got=%.17g want=%.17g rel=%.3g\n", name, got, want, rel);
    ++fails;
  } else {
    std::printf("ok   %-28s rel=%.3g\n", name, rel);
  }
}

int main() {
  struct H2 { double a, b, c, x, want; };
  H2 h2[] = {
      {2.0, 0.5, 4.5, 0.3, 1.0763803161152782},
      {2.0, 0.5, 4.5, 0.8, 1.2841360831107945},
      {11.0, 0.5, 13.5, 0.97, 2.3908802872977472},
      {2.5, 0.5, 3.0, 0.9, 2.2903103801998234},
      {0.5, 0.5, 12.0, 0.99, 1.0227240925364792},
      {3.2, 1.1, 5.63, 0.92, 2.7662715647171404},
      {2.0, 0.5, 2.5, 0.999, 5.4756385061780329},
      {5.5, 0.5, 6.0, 0.75, 1.8215936265239611},
      {1.5, 2.5, 3.1, 0.6, 2.9164144555551864},
      {2.5, 2.0, 3.5, 0.7, 5.0759495712026673},
      {9.0, 0.5, 9.5, 0.5, 1.3803997678659419},
      {9.0, 0.5, 9.5, 0.51, 1.3931449922772308},
  };
  for (auto& t : h2) check("hyp2f1", hyp2f1(t.a, t.b, t.c, t.x), t.want, 1e-12);

  struct H3 { double a1, a2, a3, b1, b2, want; };
  H3 h3[] = {
      {2.0, 0.5, 0.5, 2.5, 2.5, 1.125},
      {1.5, 0.5, 0.5, 2.0, 2.0, 1.163604913634684},
      {3.25, 0.5, 0.5, 3.75, 3.75, 1.0778972406115606},
      {7.0, 0.5, 0.5, 7.5, 7.5, 1.0361450411782535},
      {11.0, 0.5, 0.5, 12.5, 13.0, 1.0183161281362541},
      {2.0, 0.5, 0.5, 3.0, 4.0, 1.052042096307453},
  };
  for (auto& t : h3)
    check("hyp3f2_unit", hyp3f2_unit(t.a1, t.a2, t.a3, t.b1, t.b2), t.want, 1e-11);

  struct TU { double b, x, want; };
  TU tu[] = {
      {0.5, 1.0, 0.75787215614131211},
      {1.0, 2.0, 0.64569414838203467},
      {1.5, 0.8, 1.1180339887498948},
      {-1.0, 0.05, 0.73541455954083328},
      {-3.0, 5.0, 0.3301230114096415},
      {0.0, 50.0, 0.13937527806335925},
      {1.0, 35.0, 0.16786016744220398},
      {-2.5, 0.3, 0.52452309927409533},
  };
  for (auto& t : tu) check("tricomi_u_half", tricomi_u_half(t.b, t.x), t.want, 1e-11);

  struct Q { double nu, p, want; };
  Q cq[] = {
      {2, 0.5, 1.386294361119891},
      {5, 0.5, 4.351460191095526},
      {0.7, 0.01, 2.7781075483963826e-06},
      {24.0, 0.999, 51.17859777737739},
      {11.0, 1e-06, 0.4709180284887738},
  };
  for (auto& t : cq) check("chi2_quantile", chi2_quantile(t.nu, t.p), t.want, 1e-11);

  Q sq[] = {
      {1, 0.75, 1.0},
      {3, 0.9, 1.6377443536962095},
      {0.5, 0.999, 102849.11563012391},
      {17, 1e-05, -5.832099660382965},
      {2.5, 0.3, -0.5973077382523169},
  };
  for (auto& t : sq)
    check("student_t_quantile", student_t_quantile(t.nu, t.p), t.want, 1e-10);

  std::printf(fails ? "\n%d FAILURES\n" : "\nall ok\n", fails);
  return fails ? 1 : 0;
}
