#include "driver.hpp"

#include "symcone/cascade.hpp"
#include "symcone/decomp.hpp"
#include "symcone/errors.hpp"
#include "symcone/io.hpp"
#include "symcone/orbit_db.hpp"
#include "symcone/pivot.hpp"
#include "symcone/symmetry.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <type_traits>

namespace symcone::cli {

namespace {

class Failure : public std::runtime_error {
 public:
  Failure(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(usage_error, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure(usage_error, "cannot write " + path);
}

template <class F>
auto parsing(const std::string& path, F&& f) {
  try {
    return f(read_file(path));
  } catch (const ParseError& e) {
    throw Failure(usage_error, path + ": " + e.what());
  }
}

std::vector<int> iota_vector(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// ---- input preparation ---------------------------------------------------------

struct Prepared {
  InputDocument doc;
  /// Homogenized generators, one per document row followed by auxiliary ones.
  Cone ambient;
  /// Extreme rays of the pointed reduction, increasing in `source`.
  Cone cone;
  /// Ambient index of each ray of `cone`.
  std::vector<int> source;

  int rows() const { return static_cast<int>(doc.rows.rows()); }
  int ambient_degree() const { return static_cast<int>(ambient.num_rays()); }
};

Prepared prepare(const std::string& path) {
  Prepared p;
  p.doc = parsing(path, [](const std::string& text) { return parse_document(text); });
  p.ambient = document_cone(p.doc);
  const Cone reduced = reduce_to_pointed_fulldim(p.ambient);
  const std::vector<int> keep = irredundant_generators(reduced);
  Provenance prov = reduced.provenance();
  for (int k : keep) p.source.push_back(prov.source_rows[static_cast<std::size_t>(k)]);
  prov.source_rows = p.source;
  p.cone = Cone(reduced.rays().select_rows(keep), std::move(prov));
  return p;
}

std::string describe_generator(const Prepared& p, int ambient_index) {
  if (ambient_index < p.rows()) return "row " + std::to_string(ambient_index + 1);
  const auto lin = static_cast<int>(p.doc.linearity.size());
  if (ambient_index < p.rows() + lin) {
    return "negated row " + std::to_string(p.doc.linearity[static_cast<std::size_t>(ambient_index - p.rows())] + 1);
  }
  return "the homogenizing generator";
}

Permutation to_ambient(const Prepared& p, const Permutation& g) {
  std::vector<int> img = iota_vector(p.ambient.num_rays());
  for (int i = 0; i < p.rows(); ++i) img[static_cast<std::size_t>(i)] = g(i);
  const auto& lin = p.doc.linearity;
  for (std::size_t k = 0; k < lin.size(); ++k) {
    const auto it = std::find(lin.begin(), lin.end(), g(lin[k]));
    if (it == lin.end()) throw Failure(validation_failed, "the group does not preserve the linearity rows");
    img[static_cast<std::size_t>(p.rows()) + k] = p.rows() + static_cast<int>(it - lin.begin());
  }
  return Permutation(std::move(img));
}

PermGroup to_cone_group(const Prepared& p, const PermGroup& input) {
  std::vector<Permutation> gens;
  for (const auto& g : input.generators()) gens.push_back(to_ambient(p, g));
  const PermGroup ambient(p.ambient_degree(), std::move(gens));
  try {
    return restrict_action(ambient, FaceSet(p.source));
  } catch (const GroupError&) {
    throw Failure(validation_failed, "the group does not map extreme rays to extreme rays");
  }
}

PermGroup to_input_group(const Prepared& p, const PermGroup& local) {
  std::vector<Permutation> gens;
  for (const auto& g : local.generators()) gens.push_back(extend_from(FaceSet(p.source), p.ambient_degree(), g));
  const PermGroup ambient(p.ambient_degree(), std::move(gens));
  if (p.ambient_degree() == p.rows()) return ambient;
  try {
    return restrict_action(ambient, FaceSet(iota_vector(static_cast<std::size_t>(p.rows()))));
  } catch (const GroupError&) {
    throw Failure(validation_failed, "a symmetry moves an auxiliary generator and has no action on the input rows");
  }
}

struct GroupChoice {
  PermGroup group;
  std::string origin;
};

GroupChoice choose_group(const Prepared& p, const std::string& group_path, bool detect, bool trust) {
  PermGroup input;
  std::string origin;
  if (!group_path.empty()) {
    input = parsing(group_path, [&](const std::string& text) { return parse_group_file(text, p.rows()); });
    origin = "file";
  } else if (!p.doc.group.empty()) {
    input = PermGroup(p.rows(), p.doc.group);
    origin = "document";
  } else if (detect) {
    return {restricted_automorphism_group(p.cone.rays()).group, "detected"};
  } else {
    return {PermGroup::trivial(static_cast<int>(p.cone.num_rays())), "trivial"};
  }
  PermGroup g = to_cone_group(p, input);
  if (!trust && !acts_linearly(p.cone, g)) {
    throw Failure(validation_failed,
                  "the group does not act linearly on the rays (pass --trust-group for a combinatorial group)");
  }
  return {std::move(g), origin};
}

PerturbationSpec to_cone_spec(const Prepared& p, const PerturbationSpec& in) {
  PerturbationSpec out{to_cone_group(p, in.subgroup), {}, {}};
  const auto before = in.subgroup.point_orbits();
  const auto after = out.subgroup.point_orbits();
  std::vector<int> label(before.size(), -1);
  for (std::size_t l = 0; l < before.size(); ++l) {
    for (int x : before[l]) {
      const auto it = std::lower_bound(p.source.begin(), p.source.end(), x);
      if (it == p.source.end() || *it != x) continue;
      const int c = static_cast<int>(it - p.source.begin());
      for (std::size_t r = 0; r < after.size(); ++r) {
        if (std::binary_search(after[r].begin(), after[r].end(), c)) label[l] = static_cast<int>(r);
      }
      break;
    }
  }
  const std::vector<int> order = in.order.empty() ? iota_vector(before.size()) : in.order;
  for (int l : order) {
    if (label[static_cast<std::size_t>(l)] >= 0) out.order.push_back(label[static_cast<std::size_t>(l)]);
  }
  if (!in.signs.empty()) {
    out.signs.assign(after.size(), -1);
    for (std::size_t l = 0; l < before.size(); ++l) {
      if (label[l] >= 0) out.signs[static_cast<std::size_t>(label[l])] = in.signs[l];
    }
  }
  return out;
}

// ---- rendering -------------------------------------------------------------------

// Normals of a homogeneous cone get a zero constant term.
RationalVector homogenized_normal(const Prepared& p, RationalVector y) {
  if (is_homogeneous(p.doc)) y.push_back(Rational(0));
  return y;
}

std::vector<RationalVector> equations_of(const Prepared& p) {
  const RationalMatrix k = kernel_basis(p.ambient.rays());
  std::vector<RationalVector> out;
  for (std::size_t r = 0; r < k.rows(); ++r) out.push_back(homogenized_normal(p, primitive_scaling(k.row(r))));
  return out;
}

std::string render_v_representation(const std::vector<RationalVector>& gens, const std::vector<RationalVector>& lines) {
  InputDocument doc;
  doc.kind = Representation::V;
  const std::size_t cols = !gens.empty() ? gens.front().size() : !lines.empty() ? lines.front().size() : 1;
  doc.rows = RationalMatrix(0, cols);
  auto add = [&](const RationalVector& g) {
    const Rational t = g.back();
    RationalVector row{sign(t) == 0 ? Rational(0) : Rational(1)};
    for (std::size_t j = 0; j + 1 < g.size(); ++j) row.push_back(sign(t) == 0 ? g[j] : Rational(g[j] / t));
    doc.rows.append_row(row);
  };
  for (std::size_t k = 0; k < lines.size(); ++k) {
    add(lines[k]);
    doc.linearity.push_back(static_cast<int>(k));
  }
  for (const auto& g : gens) add(g);
  return render(doc);
}

std::string render_solution(const Prepared& p, const std::vector<Facet>& reps) {
  std::vector<RationalVector> normals;
  for (const auto& f : reps) normals.push_back(homogenized_normal(p, lift_normal(p.cone.provenance(), f.normal)));
  const auto eq = equations_of(p);
  if (p.doc.kind == Representation::V) return render_h_representation(normals, eq);
  return render_v_representation(normals, eq);
}

std::string input_support(const Prepared& p, const FaceSet& s) {
  std::string out;
  for (int i : s) {
    const int a = p.source[static_cast<std::size_t>(i)];
    out += ' ';
    out += a < p.rows() ? std::to_string(a + 1) : "h";
  }
  return out;
}

// ---- options ------------------------------------------------------------------

struct FacetsArgs {
  std::string in;
  std::string group;
  std::string out;
  std::string report;
  std::string method = "adjacency";
  std::string perturb;
  std::string bank;
  std::vector<int> cascade_order;
  bool detect = false;
  bool no_balinski = false;
  bool no_pruning = false;
  bool trust = false;
  std::size_t recursion_base = RecursionPolicy{}.base_rays;
  std::size_t max_depth = RecursionPolicy{}.max_depth;
  std::size_t threads = 1;
};

int run_facets(FacetsArgs a, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
  const Prepared p = prepare(a.in);

  // The document's own options apply unless the flag was given.
  for (const auto& [key, value] : p.doc.options) {
    auto set = [&](const char* flag, auto& target) {
      if (cmd.count(flag) > 0) return;
      try {
        target = static_cast<std::remove_reference_t<decltype(target)>>(std::stoul(value));
      } catch (const std::exception&) {
        throw Failure(usage_error, a.in + ": option '" + key + "' needs a number");
      }
    };
    if (key == "method") {
      if (cmd.count("--method") == 0) a.method = value;
    } else if (key == "recursion-base") {
      set("--recursion-base", a.recursion_base);
    } else if (key == "max-depth") {
      set("--max-depth", a.max_depth);
    } else if (key == "threads") {
      set("--threads", a.threads);
    } else {
      throw Failure(usage_error, a.in + ": unknown option '" + key + "'");
    }
  }

  Method method;
  try {
    method = parse_method(a.method);
  } catch (const std::invalid_argument&) {
    throw Failure(usage_error, "unknown method '" + a.method + "'");
  }
  if (!a.perturb.empty() && method != Method::pivot) throw Failure(usage_error, "--perturb needs --method pivot");
  if (a.threads == 0) throw Failure(usage_error, "--threads must be positive");

  const GroupChoice choice = choose_group(p, a.group, a.detect, a.trust);
  ConversionOptions opt;
  opt.policy.base_rays = a.recursion_base;
  opt.policy.max_depth = a.max_depth;
  opt.balinski = !a.no_balinski;
  opt.pivot_pruning = !a.no_pruning;
  opt.threads = a.threads;
  if (a.trust) {
    opt.enlarge_subgroups = false;
    opt.metric_keys = false;
  }
  for (int row : a.cascade_order) {
    const auto it = std::find(p.source.begin(), p.source.end(), row - 1);
    if (it == p.source.end()) {
      throw Failure(usage_error, "--cascade-order: row " + std::to_string(row) + " is not an extreme ray");
    }
    opt.cascade_order.push_back(static_cast<int>(it - p.source.begin()));
  }
  if (!a.bank.empty()) {
    opt.bank = std::make_shared<Bank>();
    if (std::filesystem::exists(a.bank)) {
      parsing(a.bank, [&](const std::string& text) { return load_bank(text, *opt.bank); });
    }
  }
  std::optional<PerturbationSpec> spec;
  if (!a.perturb.empty()) {
    const auto raw =
        parsing(a.perturb, [&](const std::string& text) { return parse_perturbation_file(text, p.rows()); });
    spec = to_cone_spec(p, raw);
  }

  ConversionTask task{p.cone, choice.group, method, opt};
  std::vector<Facet> reps;
  std::optional<PivotResult> pivoted;
  switch (method) {
    case Method::direct: reps = direct_orbits(p.cone, choice.group); break;
    case Method::incidence: reps = incidence_decomposition(task, 0); break;
    case Method::adjacency: reps = adjacency_decomposition(task, 0); break;
    case Method::cascade: reps = cascade_orbits(task, 0); break;
    case Method::pivot:
      pivoted = explore_basis_graph(task, spec);
      reps = pivoted->facets;
      break;
  }
  std::vector<FaceSet> supports;
  for (const auto& f : reps) supports.push_back(f.support);
  reps = representatives_as_facets(p.cone, choice.group, supports);

  const Integer order = choice.group.order();
  std::ostringstream report;
  report << kFormatHeader << '\n';
  report << "input " << (p.doc.kind == Representation::V ? "V" : "H") << " rows " << p.rows() << " columns "
         << p.doc.rows.cols() << '\n';
  report << "cone rays " << p.cone.num_rays() << " dimension " << p.cone.dimension() << '\n';
  report << "group order " << order.get_str() << " generators " << choice.group.generators().size() << " origin "
         << choice.origin << '\n';
  report << "method " << to_string(method) << '\n';
  report << "facet_orbits " << reps.size() << '\n';
  Integer total = 0;
  std::ostringstream lines;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const Integer size = orbit_size(choice.group, reps[k].support);
    total += size;
    const Integer stab = order / size;
    lines << "orbit " << k + 1 << " size " << size.get_str() << " stabilizer " << stab.get_str() << " incidence "
          << reps[k].support.size() << " support" << input_support(p, reps[k].support) << '\n';
  }
  report << "total_facets " << total.get_str() << '\n' << lines.str();
  if (pivoted) {
    report << "basis_orbits " << pivoted->basis_reps.size() << '\n';
    report << "bases_visited " << pivoted->visited.size() << '\n';
    if (spec) report << "perturbed_facet_orbits " << pivoted->fine_facets.size() << '\n';
  }
  const auto& s = *opt.stats;
  report << "subproblems " << s.subproblems << " direct_solves " << s.direct_solves << " ridges " << s.ridges
         << " balinski_skips " << s.balinski_skips << " bank_hits " << s.bank_hits << " bank_stores "
         << s.bank_stores << '\n';

  const std::string solution = render_solution(p, reps);
  if (a.out.empty()) {
    out << solution;
  } else {
    write_file(a.out, solution);
  }
  const std::string report_path = !a.report.empty() ? a.report : a.out.empty() ? "" : a.out + ".orbits";
  if (report_path.empty()) {
    err << report.str();
  } else {
    write_file(report_path, report.str());
  }
  if (opt.bank) write_file(a.bank, render_bank(*opt.bank));
  return ok;
}

// ---- automorphisms ---------------------------------------------------------------

int run_automorphisms(const std::string& in, const std::string& out_path, bool combinatorial, std::ostream& out) {
  const Prepared p = prepare(in);
  const PermGroup local = combinatorial
                              ? combinatorial_automorphisms(incidence_matrix(p.cone, dual_description_dd(p.cone)))
                              : restricted_automorphism_group(p.cone.rays()).group;
  const std::string text = render_group(to_input_group(p, local));
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
  return ok;
}

// ---- check ------------------------------------------------------------------------

int run_check(const std::string& in, const std::string& facets_path, const std::string& group_path, bool detect,
              bool trust, std::ostream& out, std::ostream& err) {
  const Prepared p = prepare(in);
  const InputDocument claimed = parsing(facets_path, [](const std::string& text) { return parse_document(text); });
  const Representation want = p.doc.kind == Representation::V ? Representation::H : Representation::V;
  if (claimed.kind != want || claimed.rows.cols() != p.doc.rows.cols()) {
    throw Failure(usage_error, facets_path + ": expected the dual representation with " +
                                   std::to_string(p.doc.rows.cols()) + " columns");
  }
  const GroupChoice choice = choose_group(p, group_path, detect, trust);

  auto failed = [&](const std::string& what) {
    err << "check failed: " << what << '\n';
    return validation_failed;
  };

  // Row [c x] of either representation is the homogenized normal (x, c).
  const bool homogeneous = is_homogeneous(p.doc);
  auto normal_of = [&](std::size_t r) {
    const auto row = claimed.rows.row_span(r);
    RationalVector y(row.begin() + 1, row.end());
    if (!homogeneous) y.push_back(row[0]);
    return y;
  };

  std::vector<bool> is_equation(claimed.rows.rows(), false);
  for (int e : claimed.linearity) is_equation[static_cast<std::size_t>(e)] = true;

  ConversionOptions opt;
  if (trust) {
    opt.enlarge_subgroups = false;
    opt.metric_keys = false;
  }
  const ConversionTask task{p.cone, choice.group, Method::adjacency, opt};
  OrbitDatabase db(choice.group);
  std::vector<std::pair<std::size_t, Facet>> facets;
  for (std::size_t r = 0; r < claimed.rows.rows(); ++r) {
    const RationalVector y = normal_of(r);
    if (homogeneous && sign(claimed.rows(r, 0)) != 0) {
      return failed((is_equation[r] ? "equation " : "inequality ") + std::to_string(r + 1) +
                    " does not pass through the apex of the cone");
    }
    std::vector<int> tight;
    for (std::size_t i = 0; i < p.ambient.num_rays(); ++i) {
      const int sg = sign(dot(y, p.ambient.ray(i)));
      if (sg < 0 || (is_equation[r] && sg != 0)) {
        return failed(describe_generator(p, static_cast<int>(i)) + " violates " +
                      (is_equation[r] ? "equation " : "inequality ") + std::to_string(r + 1));
      }
    }
    if (is_equation[r]) continue;
    for (std::size_t i = 0; i < p.cone.num_rays(); ++i) {
      if (sign(dot(y, p.ambient.ray(static_cast<std::size_t>(p.source[i])))) == 0) tight.push_back(static_cast<int>(i));
    }
    Facet f;
    try {
      f = facet_from_support(p.cone, FaceSet(tight));
    } catch (const GeometryError&) {
      return failed("inequality " + std::to_string(r + 1) + " is not a facet; it is tight at " +
                    (tight.empty() ? std::string("no rows") : "rows" + input_support(p, FaceSet(tight))));
    }
    const auto ins = db.insert_if_new(f.support);
    if (!ins.is_new) {
      return failed("inequality " + std::to_string(r + 1) + " repeats the orbit of an earlier inequality");
    }
    facets.emplace_back(r, std::move(f));
  }
  if (facets.empty()) return failed("no facets claimed");

  // Closed under adjacency up to the group, hence every facet is covered.
  for (const auto& [r, f] : facets) {
    for (const auto& ridge : ridge_orbits(task, f, 1)) {
      const Facet g = gift_wrap(p.cone, f, ridge);
      if (!db.find(g.support)) {
        return failed("missing facet orbit: the facet through rows" + input_support(p, g.support) +
                      " adjacent to inequality " + std::to_string(r + 1) + " lies in no claimed orbit");
      }
    }
  }
  Integer total = 0;
  for (const auto& e : db.entries()) total += orbit_size(choice.group, e.representative);
  out << "ok: " << facets.size() << " facet orbits, " << total.get_str() << " facets, group order "
      << choice.group.order().get_str() << '\n';
  return ok;
}

// ---- orbits -------------------------------------------------------------------------

int run_orbits(const std::string& faces_path, const std::string& from_path, const std::string& to_path, int degree,
               const std::string& in, const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (!in.empty()) degree = prepare(in).rows();
  if (degree <= 0) throw Failure(usage_error, "need --degree or --in");
  auto group = [&](const std::string& path) {
    if (path.empty()) return PermGroup::trivial(degree);
    return parsing(path, [&](const std::string& text) { return parse_group_file(text, degree); });
  };
  const PermGroup g1 = group(from_path);
  const PermGroup g2 = group(to_path);
  const auto faces = parsing(faces_path, [&](const std::string& text) { return parse_face_file(text, degree); });

  auto contains_all = [](const PermGroup& big, const PermGroup& small) {
    return std::all_of(small.generators().begin(), small.generators().end(),
                       [&](const Permutation& p) { return big.contains(p); });
  };
  std::vector<FaceSet> reps;
  std::string how;
  if (contains_all(g2, g1)) {
    for (const auto& e : fuse(faces, g1, g2).entries()) reps.push_back(e.representative);
    how = "fused";
  } else if (contains_all(g1, g2)) {
    reps = split(faces, g1, g2);
    how = "split";
  } else {
    std::vector<FaceSet> all;
    for (const auto& f : faces) {
      for (auto& s : orbit_of_set(g1, f)) all.push_back(std::move(s));
    }
    for (const auto& e : fuse(all, PermGroup::trivial(degree), g2).entries()) reps.push_back(e.representative);
    how = "expanded";
  }
  for (auto& r : reps) r = canonical_representative(g2, r);
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

  std::ostringstream report;
  report << kFormatHeader << '\n' << "mode " << how << '\n' << "orbits " << reps.size() << '\n';
  for (std::size_t k = 0; k < reps.size(); ++k) {
    report << "orbit " << k + 1 << " size " << orbit_size(g2, reps[k]).get_str() << '\n';
  }
  if (out_path.empty()) {
    out << render_faces(reps);
    err << report.str();
  } else {
    write_file(out_path, render_faces(reps));
    write_file(out_path + ".orbits", report.str());
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Facet enumeration of symmetric polyhedral cones", "symcone"};
  app.require_subcommand(1);

  FacetsArgs fa;
  auto* facets = app.add_subcommand("facets", "Facet orbit representatives of a V- or H-representation");
  facets->add_option("--in", fa.in, "Input polyhedron file")->required()->check(CLI::ExistingFile);
  auto* group_opt = facets->add_option("--group", fa.group, "Group file acting on the input rows");
  facets->add_flag("--detect-group", fa.detect, "Use the restricted automorphism group")->excludes(group_opt);
  facets->add_option("--method", fa.method, "incidence, adjacency, cascade, pivot or direct");
  facets->add_option("--recursion-base", fa.recursion_base, "Solve subcones with at most N rays directly");
  facets->add_option("--max-depth", fa.max_depth, "Recursion depth limit");
  facets->add_option("--perturb", fa.perturb, "Perturbation spec file (pivot method)");
  facets->add_flag("--no-balinski", fa.no_balinski, "Disable Balinski pruning");
  facets->add_flag("--no-pruning", fa.no_pruning, "Disable basis-graph pruning");
  facets->add_option("--bank", fa.bank, "Bank file, read if present and written back");
  facets->add_option("--threads", fa.threads, "Worker threads for adjacency decomposition");
  facets->add_option("--out", fa.out, "Output file; the orbit report goes to OUT.orbits");
  facets->add_option("--report", fa.report, "Orbit report file");
  facets->add_flag("--trust-group", fa.trust, "Accept a group that is not linear, such as a combinatorial one");
  facets->add_option("--cascade-order", fa.cascade_order, "Rows lifted by the cascade, in order")->delimiter(',');

  std::string a_in;
  std::string a_out;
  bool a_comb = false;
  auto* autos = app.add_subcommand("automorphisms", "Restricted automorphism group generators");
  autos->add_option("--in", a_in, "Input polyhedron file")->required()->check(CLI::ExistingFile);
  autos->add_option("--out", a_out, "Group file to write");
  autos->add_flag("--combinatorial", a_comb, "Automorphisms of the ray/facet incidence instead");

  std::string c_in;
  std::string c_facets;
  std::string c_group;
  bool c_detect = false;
  bool c_trust = false;
  auto* check = app.add_subcommand("check", "Verify a list of facet orbit representatives");
  check->add_option("--in", c_in, "Input polyhedron file")->required()->check(CLI::ExistingFile);
  check->add_option("--facets", c_facets, "Claimed representatives")->required()->check(CLI::ExistingFile);
  auto* c_group_opt = check->add_option("--group", c_group, "Group file acting on the input rows");
  check->add_flag("--detect-group", c_detect, "Use the restricted automorphism group")->excludes(c_group_opt);
  check->add_flag("--trust-group", c_trust, "Accept a group that is not linear");

  std::string o_faces;
  std::string o_from;
  std::string o_to;
  std::string o_in;
  std::string o_out;
  int o_degree = 0;
  auto* orbits = app.add_subcommand("orbits", "Fuse or split face orbits between two groups");
  orbits->add_option("--faces", o_faces, "Face file, 1-based indices per line")->required()->check(CLI::ExistingFile);
  orbits->add_option("--from", o_from, "Group the faces are given up to (default trivial)");
  orbits->add_option("--to", o_to, "Target group (default trivial)");
  orbits->add_option("--degree", o_degree, "Number of points");
  orbits->add_option("--in", o_in, "Polyhedron file fixing the degree");
  orbits->add_option("--out", o_out, "Output face file; the report goes to OUT.orbits");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*facets) return run_facets(fa, *facets, out, err);
    if (*autos) return run_automorphisms(a_in, a_out, a_comb, out);
    if (*check) return run_check(c_in, c_facets, c_group, c_detect, c_trust, out, err);
    if (*orbits) return run_orbits(o_faces, o_from, o_to, o_degree, o_in, o_out, out, err);
  } catch (const Failure& e) {
    err << "symcone: " << e.what() << '\n';
    return e.code();
  } catch (const DegenerateConeError& e) {
    err << "symcone: degenerate input: " << e.what() << '\n';
    return degenerate_input;
  } catch (const RecursionDepthError& e) {
    err << "symcone: " << e.what() << " (raise --max-depth or --recursion-base)\n";
    return computation_failed;
  } catch (const GroupError& e) {
    err << "symcone: group error: " << e.what() << '\n';
    return validation_failed;
  } catch (const GeometryError& e) {
    err << "symcone: invalid input: " << e.what() << '\n';
    return validation_failed;
  } catch (const std::exception& e) {
    err << "symcone: " << e.what() << '\n';
    return computation_failed;
  }
  return usage_error;
}

}  // namespace symcone::cli
