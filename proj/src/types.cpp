#include "debeam/types.hpp"

namespace debeam {

SectionProperties square_section(double side, double rho) {
  SectionProperties s;
  double b2 = side * side;
  double b4 = b2 * b2;
  double b6 = b4 * b2;
  s.A = b2;
  s.J11 = b4 / 12.0;
  s.J22 = b4 / 12.0;
  s.J12 = 0.0;
  s.Jp = s.J11 + s.J22;
  s.J1111 = b6 / 80.0;
  s.J2222 = b6 / 80.0;
  s.J1122 = b6 / 144.0;
  s.A_rho = rho * s.A;
  s.M_rho1 = rho * s.J22;
  s.M_rho2 = rho * s.J11;
  return s;
}

}  // namespace debeam
