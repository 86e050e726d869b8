// Walks through the height-3 Lubin-Tate display: its Hodge point, nilpotence,
// the Serre dual, the etale check and the approximate period map.
#include <iostream>

#include "wdisp/wdisp.hpp"

int main() {
  using namespace wdisp;
  auto lt = lubin_tate(3, 2, 2, 4);
  const WittRing& w = lt.witt;
  const Ring& R = w.base();
  std::cout << "ring: " << R.to_string() << "\nB =\n" << witt_matrix_text(w, lt.display.B);

  auto pt = projective_point(w, lt.display);
  std::cout << "point: " << point_text(R, pt) << "\n";
  std::cout << "nilpotence: " << is_nilpotent(w, lt.display).to_string() << "\n";

  auto D = dual(w, lt.display);
  std::cout << "dual (d = " << D.d << ") =\n" << witt_matrix_text(w, D.B);

  for (const auto& c : etale_all_charts(R, pt))
    std::cout << "chart " << c.chart << ": "
              << (c.applicable ? (c.result.etale ? "etale" : "not etale") : "not applicable") << "\n";

  auto PA = horizontal_sections(3, 5, 2);
  std::cout << "period map mod J^5: " << point_text(PA.ring, period_map(PA)) << "\n";
}
