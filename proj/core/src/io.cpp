#include "symcone/io.hpp"

#include "symcone/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace symcone {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Non-blank lines that are not comments ('#' or the cdd '*').
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    ++number;
    std::string t = trim(text.substr(pos, end - pos));
    if (!t.empty() && t[0] != '#' && t[0] != '*') out.push_back({number, std::move(t)});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void fail(ParseErrorKind kind, std::size_t line, const std::string& what) {
  throw ParseError(kind, line, what);
}

long parse_count(const std::string& token, std::size_t line, ParseErrorKind kind) {
  long value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || value < 0) {
    fail(kind, line, "expected a nonnegative integer, got '" + token + "'");
  }
  return value;
}

Rational parse_entry(const std::string& token, NumberFormat format, std::size_t line) {
  if (format == NumberFormat::integer && token.find('/') != std::string::npos) {
    fail(ParseErrorKind::bad_token, line, "'" + token + "' is not an integer");
  }
  try {
    return parse_rational(token);
  } catch (const std::invalid_argument&) {
    fail(ParseErrorKind::bad_token, line, "'" + token + "' is not a rational number");
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Permutation parse_cycles(const std::string& text, int degree, std::size_t line) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
  };
  skip();
  if (pos == text.size()) fail(ParseErrorKind::malformed_cycle, line, "empty permutation");
  while (pos < text.size()) {
    if (text[pos] != '(') fail(ParseErrorKind::malformed_cycle, line, "expected '(' in '" + text + "'");
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip();
      if (pos >= text.size()) fail(ParseErrorKind::malformed_cycle, line, "unterminated cycle in '" + text + "'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      long value = 0;
      const auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc()) fail(ParseErrorKind::malformed_cycle, line, "bad point in '" + text + "'");
      pos = static_cast<std::size_t>(end - text.data());
      if (value < 1 || value > degree) {
        fail(ParseErrorKind::index_out_of_range, line,
             "point " + std::to_string(value) + " outside 1.." + std::to_string(degree));
      }
      const auto k = static_cast<std::size_t>(value - 1);
      if (used[k]) fail(ParseErrorKind::not_bijection, line, "point " + std::to_string(value) + " repeated");
      used[k] = true;
      cycle.push_back(static_cast<int>(k));
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
    skip();
  }
  return Permutation(std::move(images));
}

FaceSet parse_face(const std::string& text, int degree, std::size_t line) {
  std::vector<int> idx;
  for (const auto& t : tokens(text)) {
    const long v = parse_count(t, line, ParseErrorKind::bad_token);
    if (v < 1 || v > degree) {
      fail(ParseErrorKind::index_out_of_range, line, "index " + t + " outside 1.." + std::to_string(degree));
    }
    idx.push_back(static_cast<int>(v - 1));
  }
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
    fail(ParseErrorKind::not_bijection, line, "repeated index");
  }
  return FaceSet(std::move(idx));
}

std::string join_face(const FaceSet& f) {
  std::string out;
  for (int i : f) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i + 1);
  }
  return out;
}

std::string render_row(std::span<const Rational> row) {
  std::string out;
  for (const auto& x : row) {
    if (!out.empty()) out += ' ';
    out += to_string(x);
  }
  return out;
}

}  // namespace

std::string to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::malformed_header: return "malformed header";
    case ParseErrorKind::ragged_row: return "ragged row";
    case ParseErrorKind::zero_row: return "zero row";
    case ParseErrorKind::bad_token: return "bad token";
    case ParseErrorKind::truncated: return "truncated input";
    case ParseErrorKind::malformed_cycle: return "malformed cycle";
    case ParseErrorKind::index_out_of_range: return "index out of range";
    case ParseErrorKind::not_bijection: return "not a bijection";
    case ParseErrorKind::unknown_keyword: return "unknown keyword";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + to_string(kind) +
                         ": " + what),
      kind_(kind),
      line_(line) {}

// ---- polyhedron files --------------------------------------------------------

InputDocument parse_document(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  InputDocument doc;
  doc.kind = Representation::H;
  std::size_t k = 0;
  std::vector<int> linearity;
  std::size_t linearity_line = 0;
  for (; k < lines.size(); ++k) {
    const std::string key = lower(lines[k].text);
    if (key == "begin") break;
    if (key == "v-representation") {
      doc.kind = Representation::V;
    } else if (key == "h-representation") {
      doc.kind = Representation::H;
    } else if (key.rfind("linearity", 0) == 0) {
      const auto t = tokens(lines[k].text);
      if (t.size() < 2) fail(ParseErrorKind::malformed_header, lines[k].number, "linearity needs a count");
      const long count = parse_count(t[1], lines[k].number, ParseErrorKind::malformed_header);
      if (t.size() != static_cast<std::size_t>(count) + 2) {
        fail(ParseErrorKind::malformed_header, lines[k].number, "linearity count does not match its indices");
      }
      for (std::size_t j = 2; j < t.size(); ++j) {
        linearity.push_back(static_cast<int>(parse_count(t[j], lines[k].number, ParseErrorKind::malformed_header)));
      }
      linearity_line = lines[k].number;
    } else if (key.find_first_of(" \t") == std::string::npos && k == 0) {
      // A leading single word is the cdd problem name.
    } else {
      fail(ParseErrorKind::malformed_header, lines[k].number, "unexpected '" + lines[k].text + "' before begin");
    }
  }
  if (k == lines.size()) fail(ParseErrorKind::malformed_header, 0, "missing 'begin'");
  ++k;
  if (k == lines.size()) fail(ParseErrorKind::malformed_header, lines[k - 1].number, "missing size line");

  const Line& size_line = lines[k];
  const auto st = tokens(size_line.text);
  if (st.size() != 3) fail(ParseErrorKind::malformed_header, size_line.number, "size line must read 'n m type'");
  const auto n = static_cast<std::size_t>(parse_count(st[0], size_line.number, ParseErrorKind::malformed_header));
  const auto m = static_cast<std::size_t>(parse_count(st[1], size_line.number, ParseErrorKind::malformed_header));
  if (m < 2) fail(ParseErrorKind::malformed_header, size_line.number, "need at least two columns");
  const std::string type = lower(st[2]);
  if (type == "rational") {
    doc.format = NumberFormat::rational;
  } else if (type == "integer") {
    doc.format = NumberFormat::integer;
  } else {
    fail(ParseErrorKind::malformed_header, size_line.number, "number type must be rational or integer");
  }
  ++k;

  doc.rows = RationalMatrix(0, m);
  for (std::size_t r = 0; r < n; ++r, ++k) {
    if (k == lines.size() || lower(lines[k].text) == "end") {
      fail(ParseErrorKind::truncated, k == lines.size() ? 0 : lines[k].number,
           "expected " + std::to_string(n) + " rows, found " + std::to_string(r));
    }
    const auto t = tokens(lines[k].text);
    if (t.size() != m) {
      fail(ParseErrorKind::ragged_row, lines[k].number,
           "expected " + std::to_string(m) + " entries, found " + std::to_string(t.size()));
    }
    RationalVector row;
    for (const auto& tok : t) row.push_back(parse_entry(tok, doc.format, lines[k].number));
    if (is_zero(row)) fail(ParseErrorKind::zero_row, lines[k].number, "all entries are zero");
    if (doc.kind == Representation::V && sign(row[0]) < 0) {
      fail(ParseErrorKind::bad_token, lines[k].number, "negative homogenizing marker");
    }
    doc.rows.append_row(row);
  }
  if (k == lines.size() || lower(lines[k].text) != "end") {
    fail(ParseErrorKind::truncated, k == lines.size() ? 0 : lines[k].number, "expected 'end'");
  }
  ++k;

  for (int i : linearity) {
    if (i < 1 || static_cast<std::size_t>(i) > n) {
      fail(ParseErrorKind::index_out_of_range, linearity_line, "linearity row " + std::to_string(i));
    }
  }
  std::sort(linearity.begin(), linearity.end());
  linearity.erase(std::unique(linearity.begin(), linearity.end()), linearity.end());
  for (int i : linearity) doc.linearity.push_back(i - 1);

  while (k < lines.size()) {
    const std::string section = lower(lines[k].text);
    if (section != "symmetry" && section != "options") {
      fail(ParseErrorKind::unknown_keyword, lines[k].number, "unknown section '" + lines[k].text + "'");
    }
    ++k;
    if (k == lines.size() || lower(lines[k].text) != "begin") {
      fail(ParseErrorKind::malformed_header, k == lines.size() ? 0 : lines[k].number, "expected 'begin'");
    }
    for (++k; k < lines.size() && lower(lines[k].text) != "end"; ++k) {
      if (section == "symmetry") {
        doc.group.push_back(parse_cycles(lines[k].text, static_cast<int>(n), lines[k].number));
      } else {
        const auto t = tokens(lines[k].text);
        std::string value;
        for (std::size_t j = 1; j < t.size(); ++j) value += (j > 1 ? " " : "") + t[j];
        doc.options[t[0]] = value;
      }
    }
    if (k == lines.size()) fail(ParseErrorKind::truncated, 0, "section '" + section + "' lacks 'end'");
    ++k;
  }
  return doc;
}

std::string render(const InputDocument& doc) {
  std::ostringstream out;
  out << kFormatHeader << '\n';
  out << (doc.kind == Representation::V ? "V-representation" : "H-representation") << '\n';
  if (!doc.linearity.empty()) {
    out << "linearity " << doc.linearity.size();
    for (int i : doc.linearity) out << ' ' << i + 1;
    out << '\n';
  }
  out << "begin\n";
  out << doc.rows.rows() << ' ' << doc.rows.cols() << ' '
      << (doc.format == NumberFormat::integer ? "integer" : "rational") << '\n';
  for (std::size_t r = 0; r < doc.rows.rows(); ++r) out << render_row(doc.rows.row_span(r)) << '\n';
  out << "end\n";
  if (!doc.group.empty()) {
    out << "symmetry\nbegin\n";
    for (const auto& p : doc.group) out << p.to_cycle_string() << '\n';
    out << "end\n";
  }
  if (!doc.options.empty()) {
    out << "options\nbegin\n";
    for (const auto& [key, value] : doc.options) out << key << (value.empty() ? "" : " ") << value << '\n';
    out << "end\n";
  }
  return out.str();
}

Polyhedron parse_polyhedron_file(std::string_view text) {
  const InputDocument doc = parse_document(text);
  Polyhedron p;
  p.kind = doc.kind;
  const std::size_t d = doc.rows.cols() - 1;
  if (doc.kind == Representation::H) {
    p.inequalities = doc.rows;
    p.equations = doc.linearity;
    return p;
  }
  p.points = RationalMatrix(0, d);
  p.rays = RationalMatrix(0, d);
  for (std::size_t r = 0; r < doc.rows.rows(); ++r) {
    const Rational t = doc.rows(r, 0);
    RationalVector x(doc.rows.row_span(r).begin() + 1, doc.rows.row_span(r).end());
    if (sign(t) == 0) {
      p.rays.append_row(x);
    } else {
      for (auto& v : x) v /= t;
      p.points.append_row(x);
    }
  }
  return p;
}

bool is_homogeneous(const InputDocument& doc) {
  if (doc.kind != Representation::V) return false;
  for (std::size_t r = 0; r < doc.rows.rows(); ++r) {
    if (sign(doc.rows(r, 0)) != 0) return false;
  }
  return true;
}

Cone document_cone(const InputDocument& doc) {
  const std::size_t d = doc.rows.cols() - 1;
  const bool homogeneous = is_homogeneous(doc);
  RationalMatrix gens(0, homogeneous ? d : d + 1);
  for (std::size_t r = 0; r < doc.rows.rows(); ++r) {
    const auto row = doc.rows.row_span(r);
    RationalVector g(row.begin() + 1, row.end());
    if (doc.kind == Representation::V) {
      const Rational t = row[0];
      if (sign(t) != 0) {
        for (auto& v : g) v /= t;
      }
      if (!homogeneous) g.push_back(sign(t) == 0 ? Rational(0) : Rational(1));
    } else {
      g.push_back(row[0]);
    }
    gens.append_row(g);
  }
  if (doc.kind == Representation::H) {
    for (int i : doc.linearity) {
      RationalVector g = gens.row(static_cast<std::size_t>(i));
      for (auto& v : g) v = -v;
      gens.append_row(g);
    }
    RationalVector t(d + 1, Rational(0));
    t[d] = 1;
    gens.append_row(t);
  } else {
    for (int i : doc.linearity) {
      RationalVector g = gens.row(static_cast<std::size_t>(i));
      for (auto& v : g) v = -v;
      gens.append_row(g);
    }
  }
  Provenance p;
  p.homogenized = !homogeneous;
  return Cone(std::move(gens), std::move(p));
}

// ---- groups and perturbations --------------------------------------------------

PermGroup parse_group_file(std::string_view text, int degree) {
  std::vector<Permutation> gens;
  for (const auto& line : content_lines(text)) gens.push_back(parse_cycles(line.text, degree, line.number));
  return PermGroup(degree, std::move(gens));
}

std::string render_group(const PermGroup& g) {
  std::ostringstream out;
  out << kFormatHeader << '\n';
  out << "# degree " << g.degree() << " order " << g.order().get_str() << '\n';
  for (const auto& p : g.generators()) out << p.to_cycle_string() << '\n';
  return out.str();
}

PerturbationSpec parse_perturbation_file(std::string_view text, int degree) {
  std::vector<Permutation> gens;
  std::vector<std::pair<long, std::size_t>> order;
  std::vector<std::tuple<long, int, std::size_t>> signs;
  for (const auto& line : content_lines(text)) {
    const std::size_t space = line.text.find_first_of(" \t");
    const std::string key = lower(line.text.substr(0, space));
    const std::string rest = space == std::string::npos ? std::string() : trim(line.text.substr(space));
    if (key == "generator") {
      gens.push_back(parse_cycles(rest, degree, line.number));
    } else if (key == "order") {
      for (const auto& t : tokens(rest)) order.emplace_back(parse_count(t, line.number, ParseErrorKind::bad_token), line.number);
    } else if (key == "sign") {
      const auto t = tokens(rest);
      if (t.size() != 2) fail(ParseErrorKind::bad_token, line.number, "expected 'sign <orbit> push|pull'");
      const std::string s = lower(t[1]);
      if (s != "push" && s != "pull") fail(ParseErrorKind::bad_token, line.number, "sign must be push or pull");
      signs.emplace_back(parse_count(t[0], line.number, ParseErrorKind::bad_token), s == "push" ? 1 : -1,
                         line.number);
    } else {
      fail(ParseErrorKind::unknown_keyword, line.number, "unknown keyword '" + key + "'");
    }
  }
  PerturbationSpec spec{PermGroup(degree, std::move(gens)), {}, {}};
  const auto orbits = static_cast<long>(spec.subgroup.point_orbits().size());
  for (const auto& [label, line] : order) {
    if (label < 1 || label > orbits) fail(ParseErrorKind::index_out_of_range, line, "no orbit " + std::to_string(label));
    spec.order.push_back(static_cast<int>(label - 1));
  }
  if (!spec.order.empty()) {
    std::vector<int> sorted = spec.order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() != static_cast<std::size_t>(orbits) || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ParseErrorKind::not_bijection, order.front().second, "order must list every orbit once");
    }
  }
  if (!signs.empty()) {
    spec.signs.assign(static_cast<std::size_t>(orbits), -1);
    for (const auto& [label, s, line] : signs) {
      if (label < 1 || label > orbits) fail(ParseErrorKind::index_out_of_range, line, "no orbit " + std::to_string(label));
      spec.signs[static_cast<std::size_t>(label - 1)] = s;
    }
  }
  return spec;
}

std::string render_perturbation(const PerturbationSpec& spec) {
  std::ostringstream out;
  out << kFormatHeader << '\n';
  for (const auto& p : spec.subgroup.generators()) out << "generator " << p.to_cycle_string() << '\n';
  if (!spec.order.empty()) {
    out << "order";
    for (int o : spec.order) out << ' ' << o + 1;
    out << '\n';
  }
  for (std::size_t o = 0; o < spec.signs.size(); ++o) {
    out << "sign " << o + 1 << (spec.signs[o] > 0 ? " push" : " pull") << '\n';
  }
  return out.str();
}

// ---- face lists and H output ---------------------------------------------------

std::vector<FaceSet> parse_face_file(std::string_view text, int degree) {
  std::vector<FaceSet> out;
  for (const auto& line : content_lines(text)) out.push_back(parse_face(line.text, degree, line.number));
  return out;
}

std::string render_faces(const std::vector<FaceSet>& faces) {
  std::string out(kFormatHeader);
  out += '\n';
  for (const auto& f : faces) out += join_face(f) + '\n';
  return out;
}

std::string render_h_representation(const std::vector<RationalVector>& normals,
                                    const std::vector<RationalVector>& equations) {
  InputDocument doc;
  doc.kind = Representation::H;
  doc.format = NumberFormat::integer;
  const std::size_t cols = !normals.empty() ? normals.front().size() : !equations.empty() ? equations.front().size() : 1;
  doc.rows = RationalMatrix(0, cols);
  auto add = [&](const RationalVector& a) {
    const IntegerVector z = primitive_integer(a);
    RationalVector row{Rational(z.back())};
    for (std::size_t j = 0; j + 1 < z.size(); ++j) row.push_back(Rational(z[j]));
    doc.rows.append_row(row);
  };
  for (std::size_t e = 0; e < equations.size(); ++e) {
    add(equations[e]);
    doc.linearity.push_back(static_cast<int>(e));
  }
  for (const auto& a : normals) add(a);
  return render(doc);
}

// ---- bank files ----------------------------------------------------------------

std::string render_bank(const Bank& bank) {
  std::ostringstream out;
  out << kFormatHeader << '\n';
  for (const auto& e : bank.entries()) {
    out << "entry " << e.rays.rows() << ' ' << e.rays.cols() << '\n';
    for (std::size_t r = 0; r < e.rays.rows(); ++r) out << render_row(e.rays.row_span(r)) << '\n';
    out << "generators " << e.group.generators().size() << '\n';
    for (const auto& p : e.group.generators()) out << p.to_cycle_string() << '\n';
    out << "orbits " << e.facet_orbit_reps.size() << '\n';
    for (const auto& f : e.facet_orbit_reps) out << join_face(f) << '\n';
  }
  return out.str();
}

std::size_t load_bank(std::string_view text, Bank& bank) {
  const std::vector<Line> lines = content_lines(text);
  std::size_t k = 0;
  std::size_t added = 0;
  auto expect = [&](const std::string& key, std::size_t arity) {
    if (k == lines.size()) fail(ParseErrorKind::truncated, 0, "expected '" + key + "'");
    const auto t = tokens(lines[k].text);
    if (t.empty() || t[0] != key || t.size() != arity + 1) {
      fail(ParseErrorKind::malformed_header, lines[k].number, "expected '" + key + "' with " + std::to_string(arity) + " counts");
    }
    std::vector<std::size_t> v;
    for (std::size_t j = 1; j < t.size(); ++j) {
      v.push_back(static_cast<std::size_t>(parse_count(t[j], lines[k].number, ParseErrorKind::malformed_header)));
    }
    ++k;
    return v;
  };
  auto next_line = [&]() -> const Line& {
    if (k == lines.size()) fail(ParseErrorKind::truncated, 0, "bank entry cut short");
    return lines[k++];
  };
  while (k < lines.size()) {
    const auto dims = expect("entry", 2);
    BankEntry e;
    e.rays = RationalMatrix(0, dims[1]);
    for (std::size_t r = 0; r < dims[0]; ++r) {
      const Line& l = next_line();
      const auto t = tokens(l.text);
      if (t.size() != dims[1]) fail(ParseErrorKind::ragged_row, l.number, "bank ray has the wrong length");
      RationalVector row;
      for (const auto& tok : t) row.push_back(parse_entry(tok, NumberFormat::rational, l.number));
      e.rays.append_row(row);
    }
    const int n = static_cast<int>(dims[0]);
    std::vector<Permutation> gens;
    for (std::size_t g = expect("generators", 1)[0]; g > 0; --g) {
      const Line& l = next_line();
      gens.push_back(parse_cycles(l.text, n, l.number));
    }
    e.group = PermGroup(n, std::move(gens));
    for (std::size_t f = expect("orbits", 1)[0]; f > 0; --f) {
      const Line& l = next_line();
      e.facet_orbit_reps.push_back(parse_face(l.text, n, l.number));
    }
    if (bank.store(std::move(e))) ++added;
  }
  return added;
}

}  // namespace symcone
