#include "driver.hpp"
#include "oracles.hpp"
#include "symcone/io.hpp"
#include "symcone/symmetry.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace symcone;
namespace fs = std::filesystem;

namespace {

InputDocument v_document(const RationalMatrix& m, bool points) {
  InputDocument doc;
  doc.kind = Representation::V;
  doc.rows = RationalMatrix(0, m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RationalVector row{points ? Rational(1) : Rational(0)};
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    doc.rows.append_row(row);
  }
  return doc;
}

class Workdir {
 public:
  Workdir() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("symcone_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string read(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

 private:
  fs::path dir_;
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome symcone_run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Values of `key` lines in an orbit report, first token after the key.
std::map<std::string, std::string> report_fields(const std::string& report) {
  std::map<std::string, std::string> out;
  std::istringstream in(report);
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string key;
    std::string value;
    ls >> key >> value;
    if (key == "group") ls >> value;
    out.emplace(key, value);
  }
  return out;
}

ParseErrorKind parse_kind(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseErrorKind::unknown_keyword;
}

}  // namespace

TEST(PolyhedronFile, SquarePoints) {
  const Polyhedron p = parse_polyhedron_file(
      "V-representation\nbegin\n4 3 integer\n1 1 1\n1 -1 1\n1 1 -1\n1 -1 -1\nend\n");
  EXPECT_EQ(p.kind, Representation::V);
  EXPECT_EQ(p.points.rows(), 4u);
  EXPECT_EQ(p.rays.rows(), 0u);
  EXPECT_EQ(p.points(1, 0), Rational(-1));
}

TEST(PolyhedronFile, BoxInequalities) {
  const Polyhedron p = parse_polyhedron_file(
      "H-representation\nbegin\n4 3 rational\n1 -1 0\n1 0 -1\n1 1 0\n1 0 1\nend\n");
  EXPECT_EQ(p.kind, Representation::H);
  EXPECT_EQ(p.inequalities.rows(), 4u);
  EXPECT_TRUE(p.equations.empty());
}

TEST(PolyhedronFile, RayRow) {
  const Polyhedron p = parse_polyhedron_file("V-representation\nbegin\n1 3 rational\n0 1 1/3\nend\n");
  ASSERT_EQ(p.rays.rows(), 1u);
  EXPECT_EQ(p.rays.row(0), (RationalVector{Rational(1), Rational(1, 3)}));
}

TEST(PolyhedronFile, RoundTrip) {
  InputDocument doc = v_document(oracle::oct_pyr_rays(), false);
  doc.group = {Permutation::from_cycles(7, "(1 2)"), Permutation::from_cycles(7, "(3 4)")};
  doc.options["method"] = "incidence";
  doc.linearity = {6};
  EXPECT_EQ(parse_document(render(doc)), doc);

  InputDocument h;
  h.format = NumberFormat::integer;
  h.rows = RationalMatrix{{1, -1, 0}, {1, 0, -1}, {1, 1, 0}, {1, 0, 1}};
  EXPECT_EQ(parse_document(render(h)), h);
}

TEST(PolyhedronFile, DistinctErrors) {
  std::size_t line = 0;
  EXPECT_EQ(parse_kind("V-representation\n4 3 rational\n", &line), ParseErrorKind::malformed_header);
  EXPECT_EQ(parse_kind("V-representation\nbegin\n4 x rational\n", &line), ParseErrorKind::malformed_header);
  EXPECT_EQ(line, 3u);
  EXPECT_EQ(parse_kind("V-representation\nbegin\n2 3 rational\n1 1 1\n1 1\nend\n", &line),
            ParseErrorKind::ragged_row);
  EXPECT_EQ(line, 5u);
  EXPECT_EQ(parse_kind("V-representation\nbegin\n2 3 rational\n1 1 1\n0 0 0\nend\n", &line),
            ParseErrorKind::zero_row);
  EXPECT_EQ(line, 5u);
  EXPECT_EQ(parse_kind("V-representation\nbegin\n1 3 rational\n1 1/0 1\nend\n", &line), ParseErrorKind::bad_token);
  EXPECT_EQ(line, 4u);
  EXPECT_EQ(parse_kind("V-representation\nbegin\n1 3 integer\n1 1/2 1\nend\n"), ParseErrorKind::bad_token);
  EXPECT_EQ(parse_kind("V-representation\nbegin\n2 3 rational\n1 1 1\nend\n"), ParseErrorKind::truncated);
}

TEST(GroupFile, Examples) {
  const PermGroup a = parse_group_file("(1 2)(3 4)\n", 4);
  ASSERT_EQ(a.generators().size(), 1u);
  EXPECT_EQ(a.order(), 2);
  EXPECT_TRUE(parse_group_file("", 5).is_trivial());
  EXPECT_EQ(parse_group_file("(1 2 3)\n(1 2)\n", 3).order(), 6);
  EXPECT_EQ(parse_group_file(render_group(PermGroup::symmetric(5)), 5).order(), 120);
}

TEST(GroupFile, Errors) {
  auto kind = [](const std::string& text, int n) {
    try {
      parse_group_file(text, n);
    } catch (const ParseError& e) {
      return e.kind();
    }
    return ParseErrorKind::unknown_keyword;
  };
  EXPECT_EQ(kind("(1 5)", 4), ParseErrorKind::index_out_of_range);
  EXPECT_EQ(kind("(1 2", 4), ParseErrorKind::malformed_cycle);
  EXPECT_EQ(kind("1 2", 4), ParseErrorKind::malformed_cycle);
  EXPECT_EQ(kind("(1 2)(2 3)", 4), ParseErrorKind::not_bijection);
}

TEST(PerturbationFile, RoundTrip) {
  const PerturbationSpec spec =
      parse_perturbation_file("generator (1 8)(2 7)\ngenerator (2 3)\norder 2 1 3 4 5\nsign 2 push\n", 8);
  EXPECT_EQ(spec.subgroup.order(), 12);
  EXPECT_EQ(spec.order, (std::vector<int>{1, 0, 2, 3, 4}));
  EXPECT_EQ(spec.signs, (std::vector<int>{-1, 1, -1, -1, -1}));
  const PerturbationSpec again = parse_perturbation_file(render_perturbation(spec), 8);
  EXPECT_EQ(again.order, spec.order);
  EXPECT_EQ(again.signs, spec.signs);
  EXPECT_EQ(again.subgroup.generators(), spec.subgroup.generators());
  EXPECT_THROW(parse_perturbation_file("order 1 1 2\n", 3), ParseError);
}

TEST(FaceFile, RoundTrip) {
  const std::vector<FaceSet> faces{{0, 1, 2}, {3}, {2, 4}};
  EXPECT_EQ(parse_face_file(render_faces(faces), 5), faces);
  EXPECT_THROW(parse_face_file("1 6\n", 5), ParseError);
}

TEST(Cli, CubeAdjacency) {
  Workdir w;
  const std::string in = w.write("cube3.ext", render(v_document(oracle::cube_vertices(3), true)));
  const Outcome r = symcone_run({"facets", "--in", in, "--detect-group", "--method", "adjacency"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = report_fields(r.err);
  EXPECT_EQ(f.at("facet_orbits"), "1");
  EXPECT_EQ(f.at("group"), "48");
  const std::size_t brute = oracle::brute_force_facets(oracle::homogenized_rows(oracle::cube_vertices(3))).size();
  EXPECT_EQ(f.at("total_facets"), std::to_string(brute));
  EXPECT_EQ(brute, 6u);
}

TEST(Cli, CrossPolytopePivot) {
  Workdir w;
  const std::string in = w.write("cross4.ext", render(v_document(oracle::cross_vertices(4), true)));
  const std::string out = w.path("cross4.ine");
  const Outcome r = symcone_run({"facets", "--in", in, "--detect-group", "--method", "pivot", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = report_fields(Workdir::read(out + ".orbits"));
  EXPECT_EQ(f.at("facet_orbits"), "1");
  EXPECT_EQ(f.at("total_facets"), "16");
  EXPECT_EQ(f.at("basis_orbits"), "1");
  EXPECT_EQ(symcone_run({"check", "--in", in, "--facets", out, "--detect-group"}).code, 0);
}

TEST(Cli, CheckRejectsIncompleteList) {
  Workdir w;
  const std::string in = w.write("cube3.ext", render(v_document(oracle::cube_vertices(3), true)));
  const Outcome full = symcone_run({"facets", "--in", in, "--method", "direct"});
  ASSERT_EQ(full.code, 0);
  InputDocument h = parse_document(full.out);
  ASSERT_EQ(h.rows.rows(), 6u);
  InputDocument missing = h;
  missing.rows = RationalMatrix(0, h.rows.cols());
  for (std::size_t r = 1; r < h.rows.rows(); ++r) missing.rows.append_row(h.rows.row(r));
  const Outcome bad = symcone_run({"check", "--in", in, "--facets", w.write("missing.ine", render(missing))});
  EXPECT_EQ(bad.code, cli::validation_failed);
  EXPECT_NE(bad.err.find("missing facet"), std::string::npos) << bad.err;

  InputDocument violated = h;
  violated.rows(0, 0) = 0;
  const Outcome v = symcone_run({"check", "--in", in, "--facets", w.write("violated.ine", render(violated))});
  EXPECT_EQ(v.code, cli::validation_failed);
  EXPECT_NE(v.err.find("violates inequality 1"), std::string::npos) << v.err;
}

TEST(Cli, CheckAcceptsEveryMethod) {
  Workdir w;
  std::vector<std::pair<std::string, InputDocument>> inputs{
      {"cube3", v_document(oracle::cube_vertices(3), true)},
      {"cross4", v_document(oracle::cross_vertices(4), true)},
      {"octpyr", v_document(oracle::oct_pyr_rays(), false)},
      {"simplex", v_document(RationalMatrix::identity(4), false)},
  };
  for (const auto& [name, doc] : inputs) {
    const std::string in = w.write(name + ".ext", render(doc));
    std::string first;
    for (const char* m : {"direct", "incidence", "adjacency", "cascade", "pivot"}) {
      const std::string out = w.path(name + "_" + m + ".ine");
      const Outcome r = symcone_run({"facets", "--in", in, "--detect-group", "--method", m, "--recursion-base", "4",
                                     "--out", out});
      ASSERT_EQ(r.code, 0) << name << " " << m << ": " << r.err;
      const std::string text = Workdir::read(out);
      if (first.empty()) first = text;
      EXPECT_EQ(text, first) << name << " " << m;
      const Outcome c = symcone_run({"check", "--in", in, "--facets", out, "--detect-group"});
      EXPECT_EQ(c.code, 0) << name << " " << m << ": " << c.err;
    }
  }
}

TEST(Cli, Deterministic) {
  Workdir w;
  const std::string in = w.write("octpyr.ext", render(v_document(oracle::oct_pyr_rays(), false)));
  for (const char* m : {"incidence", "adjacency", "pivot"}) {
    const Outcome a = symcone_run({"facets", "--in", in, "--detect-group", "--method", m, "--recursion-base", "3"});
    const Outcome b = symcone_run({"facets", "--in", in, "--detect-group", "--method", m, "--recursion-base", "3"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
  }
}

TEST(Cli, DetectedEqualsSuppliedGroup) {
  Workdir w;
  const std::string in = w.write("cube4.ext", render(v_document(oracle::cube_vertices(4), true)));
  const Outcome g = symcone_run({"automorphisms", "--in", in});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_NE(g.out.find("order 384"), std::string::npos);
  const std::string group = w.write("cube4.grp", g.out);
  const Outcome a = symcone_run({"facets", "--in", in, "--detect-group", "--method", "incidence"});
  const Outcome b = symcone_run({"facets", "--in", in, "--group", group, "--method", "incidence"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(report_fields(a.err).at("total_facets"), report_fields(b.err).at("total_facets"));
}

TEST(Cli, CombinatorialGroupNeedsTrust) {
  Workdir w;
  const std::string in = w.write("octpyr.ext", render(v_document(oracle::oct_pyr_rays(), false)));
  const Outcome g = symcone_run({"automorphisms", "--in", in, "--combinatorial"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_NE(g.out.find("order 48"), std::string::npos) << g.out;
  const std::string group = w.write("comb.grp", g.out);
  EXPECT_EQ(symcone_run({"facets", "--in", in, "--group", group}).code, cli::validation_failed);
  const Outcome t = symcone_run({"facets", "--in", in, "--group", group, "--trust-group", "--method", "incidence",
                                 "--recursion-base", "3"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(report_fields(t.err).at("facet_orbits"), "2");
  EXPECT_EQ(report_fields(t.err).at("total_facets"),
            std::to_string(oracle::brute_force_facets(oracle::oct_pyr_rays()).size()));
}

TEST(Cli, HRepresentationInput) {
  Workdir w;
  const std::string in =
      w.write("box.ine", "H-representation\nbegin\n4 3 rational\n1 -1 0\n1 0 -1\n1 1 0\n1 0 1\nend\n");
  const Outcome r = symcone_run({"facets", "--in", in, "--detect-group"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Polyhedron p = parse_polyhedron_file(r.out);
  EXPECT_EQ(p.kind, Representation::V);
  EXPECT_EQ(p.points.rows(), 1u);
  EXPECT_EQ(report_fields(r.err).at("total_facets"), "4");
  EXPECT_EQ(symcone_run({"check", "--in", in, "--facets", w.write("box.ext", r.out), "--detect-group"}).code, 0);
}

TEST(Cli, LowerDimensionalInput) {
  Workdir w;
  // A square in the plane z = 2 of R^3, plus an interior point.
  const std::string in = w.write(
      "flat.ext", "V-representation\nbegin\n5 4 integer\n1 0 0 2\n1 1 0 2\n1 0 1 2\n1 1 1 2\n2 1 1 4\nend\n");
  const std::string out = w.path("flat.ine");
  const Outcome r = symcone_run({"facets", "--in", in, "--detect-group", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const InputDocument h = parse_document(Workdir::read(out));
  EXPECT_EQ(h.linearity.size(), 1u);
  EXPECT_EQ(report_fields(Workdir::read(out + ".orbits")).at("total_facets"), "4");
  EXPECT_EQ(symcone_run({"check", "--in", in, "--facets", out}).code, cli::validation_failed);
  EXPECT_EQ(symcone_run({"check", "--in", in, "--facets", out, "--detect-group"}).code, 0);
}

TEST(Cli, RaysOnlyInputIsACone) {
  Workdir w;
  // The cone over a square: rows with marker 0 and no points.
  const std::string in = w.write(
      "sq.ext", "V-representation\nbegin\n4 4 integer\n0 1 0 1\n0 0 1 1\n0 -1 0 1\n0 0 -1 1\nend\n");
  const std::string out = w.path("sq.ine");
  ASSERT_EQ(symcone_run({"facets", "--in", in, "--detect-group", "--out", out}).code, 0);
  const InputDocument h = parse_document(Workdir::read(out));
  EXPECT_TRUE(h.linearity.empty());
  ASSERT_EQ(h.rows.rows(), 1u);
  EXPECT_EQ(h.rows(0, 0), Rational(0));
  EXPECT_EQ(report_fields(Workdir::read(out + ".orbits")).at("total_facets"), "4");
  EXPECT_EQ(symcone_run({"check", "--in", in, "--facets", out, "--detect-group"}).code, 0);
  const std::string shifted = w.write("shift.ine", "H-representation\nbegin\n1 4 integer\n1 1 1 1\nend\n");
  EXPECT_EQ(symcone_run({"check", "--in", in, "--facets", shifted, "--detect-group"}).code, cli::validation_failed);
}

TEST(Cli, Failures) {
  Workdir w;
  const std::string line = w.write("line.ext", "V-representation\nbegin\n2 2 integer\n0 1\n0 -1\nend\n");
  EXPECT_EQ(symcone_run({"facets", "--in", line}).code, cli::degenerate_input);
  const std::string cube = w.write("cube.ext", render(v_document(oracle::cube_vertices(2), true)));
  const std::string bad = w.write("bad.grp", "(1 2)\n");
  const Outcome r = symcone_run({"facets", "--in", cube, "--group", bad});
  EXPECT_EQ(r.code, cli::validation_failed);
  EXPECT_NE(r.err.find("linearly"), std::string::npos);
  const std::string broken = w.write("broken.ext", "V-representation\nbegin\n1 3 rational\n1 x 1\nend\n");
  const Outcome p = symcone_run({"facets", "--in", broken});
  EXPECT_EQ(p.code, cli::usage_error);
  EXPECT_NE(p.err.find("line 4"), std::string::npos) << p.err;
  EXPECT_EQ(symcone_run({"facets", "--in", cube, "--method", "simplex"}).code, cli::usage_error);
  EXPECT_EQ(symcone_run({}).code, cli::usage_error);
}

TEST(Cli, PerturbedPivot) {
  Workdir w;
  // Centered 3-cube pulled orbitwise under the stabilizer of the main diagonal.
  const std::string in = w.write("cube3.ext", render(v_document(oracle::cube_vertices(3), true)));
  const std::string spec = w.write("pull.spec", "generator (2 3 5)(4 7 6)\ngenerator (2 3)(6 7)\ngenerator (1 8)(2 7)(3 6)(4 5)\n");
  const Outcome r = symcone_run({"facets", "--in", in, "--detect-group", "--method", "pivot", "--perturb", spec});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = report_fields(r.err);
  EXPECT_EQ(f.at("basis_orbits"), "1");
  EXPECT_EQ(f.at("perturbed_facet_orbits"), "1");
  EXPECT_EQ(f.at("total_facets"), "6");
  EXPECT_EQ(symcone_run({"facets", "--in", in, "--perturb", spec}).code, cli::usage_error);
}

TEST(Cli, BankFileRoundTrip) {
  Workdir w;
  const std::string in = w.write("cube4.ext", render(v_document(oracle::cube_vertices(4), true)));
  const std::string bank = w.path("cube4.bank");
  const Outcome a = symcone_run({"facets", "--in", in, "--detect-group", "--method", "incidence", "--recursion-base",
                                 "4", "--bank", bank});
  ASSERT_EQ(a.code, 0) << a.err;
  Bank loaded;
  EXPECT_GT(load_bank(Workdir::read(bank), loaded), 0u);
  EXPECT_EQ(render_bank(loaded), Workdir::read(bank));
  const Outcome b = symcone_run({"facets", "--in", in, "--detect-group", "--method", "incidence", "--recursion-base",
                                 "4", "--bank", bank});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(report_fields(b.err).at("subproblems"), "");
}

TEST(Cli, OrbitsFuseAndSplit) {
  Workdir w;
  const std::string faces = w.write("faces.txt", "1 2\n3 4\n1 3\n2 4\n");
  const std::string big = w.write("big.grp", "(1 2 3 4)\n(1 3)\n");
  const std::string small = w.write("small.grp", "(1 3)(2 4)\n");
  const Outcome fused = symcone_run({"orbits", "--faces", faces, "--to", big, "--degree", "4"});
  ASSERT_EQ(fused.code, 0) << fused.err;
  EXPECT_EQ(parse_face_file(fused.out, 4), (std::vector<FaceSet>{{0, 1}, {0, 2}}));
  const std::string rep = w.write("rep.txt", "1 2\n");
  const Outcome s = symcone_run({"orbits", "--faces", rep, "--from", big, "--to", small, "--degree", "4"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(parse_face_file(s.out, 4), (std::vector<FaceSet>{{0, 1}, {0, 3}}));
  EXPECT_NE(s.err.find("mode split"), std::string::npos);
}
