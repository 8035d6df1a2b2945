/**********
 *   Copyright 2026 The radpol Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
\**********/

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "radpol/fields.hpp"

using namespace radpol;

namespace {

Grid small_grid(int n, double extent = 3.0) {
  Grid g;
  g.nx = n;
  g.ny = n;
  g.extent = extent;
  return g;
}

std::string tmp_path(const char* name) {
  return std::string("radpol_test_") + name;
}

}  // namespace

TEST_CASE("grid validation", "[fields]") {
  REQUIRE_NOTHROW(Grid{}.validate());
  Grid g1;
  g1.nx = 1;
  REQUIRE_THROWS_AS(g1.validate(), ValidationError);
  Grid g2;
  g2.extent = 0.0;
  REQUIRE_THROWS_AS(g2.validate(), ValidationError);
  Grid g3;
  g3.waist = -1.0;
  REQUIRE_THROWS_AS(g3.validate(), ValidationError);
}

TEST_CASE("grid coordinates are symmetric pixel centers", "[fields]") {
  const Grid g = small_grid(64);
  REQUIRE(g.x(0) == Catch::Approx(-g.half_width() + 0.5 * g.dx()).margin(1e-15));
  for (int ix = 0; ix < g.nx; ++ix)
    REQUIRE(g.x(g.nx - 1 - ix) == Catch::Approx(-g.x(ix)).margin(1e-12));
  REQUIRE(g.dx() == Catch::Approx(2.0 * g.half_width() / g.nx).margin(1e-15));
}

TEST_CASE("transverse modes are orthonormal on the grid", "[fields]") {
  const Grid g = small_grid(128);
  const auto m10 = hg_mode(1, 0, g);
  const auto m01 = hg_mode(0, 1, g);
  REQUIRE(mode_overlap(m10, m10, g).real() == Catch::Approx(1.0).margin(1e-6));
  REQUIRE(mode_overlap(m01, m01, g).real() == Catch::Approx(1.0).margin(1e-6));
  // The cross overlap vanishes identically by parity on a symmetric grid.
  REQUIRE(std::abs(mode_overlap(m10, m01, g)) < 1e-12);

  const auto m00 = hg_mode(0, 0, g);
  REQUIRE(mode_overlap(m00, m00, g).real() == Catch::Approx(1.0).margin(1e-6));
  REQUIRE(std::abs(mode_overlap(m00, m10, g)) < 1e-12);
}

TEST_CASE("first excited mode is odd along its axis", "[fields]") {
  const Grid g = small_grid(32);
  const auto m10 = hg_mode(1, 0, g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const cplx a = m10[g.index(ix, iy)];
      const cplx b = m10[g.index(g.nx - 1 - ix, iy)];
      REQUIRE(std::abs(a + b) < 1e-12);
    }
}

TEST_CASE("mode orders and map sizes are checked", "[fields]") {
  const Grid g = small_grid(16);
  REQUIRE_THROWS_AS(hg_mode(-1, 0, g), ValidationError);
  const auto m10 = hg_mode(1, 0, g);
  std::vector<cplx> wrong(10);
  REQUIRE_THROWS_AS(mode_overlap(m10, wrong, g), ValidationError);
}

TEST_CASE("rendered radial beam has the expected local structure", "[fields]") {
  // Odd pixel count puts pixel centers exactly on both axes.
  const Grid g = small_grid(65);
  const FieldMap map = render(radial_beam(), g);

  // Dark center: both modes vanish at the origin.
  const std::size_t kc = g.index(32, 32);
  double imax = 0.0;
  for (std::size_t k = 0; k < g.npix(); ++k) imax = std::max(imax, map.intensity(k));
  REQUIRE(map.intensity(kc) < 1e-15 * imax);

  // On the +x axis the field is x-polarized: the x/y contrast saturates.
  const auto sx = map.local_stokes(g.index(50, 32));
  REQUIRE(sx[0] > 1e-3 * imax);
  REQUIRE(sx[3] == Catch::Approx(sx[0]).margin(1e-12 * imax));

  // On the +y axis it is y-polarized.
  const auto sy = map.local_stokes(g.index(32, 50));
  REQUIRE(sy[3] == Catch::Approx(-sy[0]).margin(1e-12 * imax));
}

TEST_CASE("rendering is linear in the amplitudes", "[fields]") {
  const Grid g = small_grid(24);
  TwoQubitAmplitudes u, v;
  u.a = {cplx(0.5, 0.1), cplx(-0.2, 0.3), cplx(0.0, 0.7), cplx(0.1, -0.4)};
  v.a = {cplx(-0.3, 0.2), cplx(0.6, 0.0), cplx(0.2, -0.1), cplx(0.4, 0.5)};
  const cplx w(0.8, -0.6);
  const FieldMap left = render(u + w * v, g);
  const FieldMap right_u = render(u, g);
  const FieldMap right_v = render(v, g);
  for (std::size_t k = 0; k < g.npix(); ++k) {
    REQUIRE(std::abs(left.ex[k] - (right_u.ex[k] + w * right_v.ex[k])) < 1e-12);
    REQUIRE(std::abs(left.ey[k] - (right_u.ey[k] + w * right_v.ey[k])) < 1e-12);
  }
}

TEST_CASE("integrated polarization coherency matches the partial trace", "[fields]") {
  const Grid g = small_grid(128);
  const FieldMap map = render(radial_beam(), g);
  const CoherencyMatrix2 num = integrated_pol_coherency(map);
  const CoherencyMatrix2 want = reduce_pol(coherency_of(radial_beam()));
  REQUIRE(max_abs_diff(num.rho, want.rho) < 1e-4);

  // A generic (entangled-structure) input too.
  TwoQubitAmplitudes e;
  e.a = {cplx(0.5, 0.0), cplx(0.0, 0.5), cplx(-0.5, 0.0), cplx(0.0, -0.5)};
  const CoherencyMatrix2 num2 = integrated_pol_coherency(render(e, g));
  const CoherencyMatrix2 want2 = reduce_pol(coherency_of(e));
  REQUIRE(max_abs_diff(num2.rho, want2.rho) < 1e-4);
}

TEST_CASE("field CSV round-trips through disk", "[fields]") {
  const Grid g = small_grid(16);
  TwoQubitAmplitudes e;
  e.a = {cplx(0.4, 0.3), cplx(-0.1, 0.2), cplx(0.6, -0.5), cplx(0.0, 0.3)};
  const FieldMap out = render(e, g);
  const std::string path = tmp_path("roundtrip.csv");
  emit_csv(out, path);
  const FieldMap back = load_field_csv(path, g);
  for (std::size_t k = 0; k < g.npix(); ++k) {
    REQUIRE(std::abs(back.ex[k] - out.ex[k]) < 1e-9);
    REQUIRE(std::abs(back.ey[k] - out.ey[k]) < 1e-9);
  }
  std::remove(path.c_str());
}

TEST_CASE("pixmap output has the right header and size", "[fields]") {
  const Grid g = small_grid(12);
  const FieldMap map = render(radial_beam(), g);
  const std::string path = tmp_path("map.ppm");
  emit_pixmap(map, MapLayer::intensity, path);

  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::string magic, w, h, maxval;
  is >> magic >> w >> h >> maxval;
  REQUIRE(magic == "P6");
  REQUIRE(w == "12");
  REQUIRE(h == "12");
  REQUIRE(maxval == "255");
  is.get();  // the single whitespace byte after the header
  std::vector<char> pixels(3 * g.npix());
  is.read(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  REQUIRE(is.gcount() == static_cast<std::streamsize>(pixels.size()));
  is.get();
  REQUIRE(is.eof());
  std::remove(path.c_str());

  const std::string path2 = tmp_path("phase.ppm");
  emit_pixmap(map, MapLayer::phase_x, path2);
  std::ifstream is2(path2, std::ios::binary);
  REQUIRE(is2.good());
  std::remove(path2.c_str());
}

TEST_CASE("file errors surface as IoError", "[fields]") {
  const Grid g = small_grid(8);
  const FieldMap map = render(radial_beam(), g);
  REQUIRE_THROWS_AS(emit_csv(map, "no_such_dir/impossible.csv"), IoError);
  REQUIRE_THROWS_AS(emit_pixmap(map, MapLayer::intensity, "no_such_dir/impossible.ppm"), IoError);
  REQUIRE_THROWS_AS(load_field_csv("definitely_missing_file.csv", g), IoError);

  // Truncated file.
  const std::string path = tmp_path("short.csv");
  {
    std::ofstream os(path);
    os << "x,y,re_ex,im_ex,re_ey,im_ey\n";
    os << "0,0,1,0,0,0\n";
  }
  REQUIRE_THROWS_AS(load_field_csv(path, g), IoError);
  std::remove(path.c_str());

  // Wrong coordinates.
  const std::string path2 = tmp_path("coords.csv");
  emit_csv(map, path2);
  Grid other = g;
  other.extent = 4.0;
  REQUIRE_THROWS_AS(load_field_csv(path2, other), IoError);
  std::remove(path2.c_str());
}

TEST_CASE("emit_map dispatches by format", "[fields]") {
  const Grid g = small_grid(8);
  const FieldMap map = render(radial_beam(), g);
  const std::string p1 = tmp_path("dispatch.ppm");
  const std::string p2 = tmp_path("dispatch.csv");
  emit_map(map, p1, MapFormat::pixmap);
  emit_map(map, p2, MapFormat::csv);
  std::ifstream i1(p1, std::ios::binary), i2(p2);
  std::string m1;
  i1 >> m1;
  REQUIRE(m1 == "P6");
  std::string header;
  std::getline(i2, header);
  REQUIRE(header == "x,y,re_ex,im_ex,re_ey,im_ey");
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}
