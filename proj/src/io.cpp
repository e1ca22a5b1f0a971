#include "ccr/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ccr/error.hpp"

namespace ccr {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> words;
  std::string text;  // comment stripped, trimmed
};

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    start = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line l;
    l.number = number;
    std::istringstream in{std::string(raw)};
    for (std::string w; in >> w;) l.words.push_back(w);
    if (l.words.empty()) continue;
    const auto first = raw.find_first_not_of(" \t\r");
    const auto last = raw.find_last_not_of(" \t\r");
    l.text = std::string(raw.substr(first, last - first + 1));
    out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& what) {
  throw InputError("line " + std::to_string(l.number) + ": " + what);
}

void expect_words(const Line& l, std::size_t n) {
  if (l.words.size() != n) fail(l, "expected " + std::to_string(n) + " fields in '" + l.text + "'");
}

std::uint64_t parse_uint(const Line& l, const std::string& w) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) fail(l, "expected a number, got '" + w + "'");
  return v;
}

Count parse_count(const Line& l, const std::string& w) {
  if (w == "inf") return Count::infinite();
  return Count(parse_uint(l, w));
}

}  // namespace

ComplexDescription parse_complex(std::string_view text) {
  ComplexDescription d;
  bool have_name = false;
  std::optional<std::size_t> declared;
  std::optional<std::size_t> current;
  for (const Line& l : lines_of(text)) {
    const std::string& key = l.words[0];
    if (key == "complex") {
      expect_words(l, 2);
      if (have_name) fail(l, "duplicate complex line");
      d.name = l.words[1];
      have_name = true;
    } else if (key == "factors") {
      expect_words(l, 2);
      if (declared) fail(l, "duplicate factors line");
      declared = parse_uint(l, l.words[1]);
      if (*declared == 0) fail(l, "a complex needs at least one factor");
    } else if (key == "factor") {
      expect_words(l, 2);
      if (!declared) fail(l, "factor before factors line");
      const std::uint64_t k = parse_uint(l, l.words[1]);
      if (k != d.factors.size()) fail(l, "expected factor " + std::to_string(d.factors.size()));
      if (k >= *declared) fail(l, "more factors than declared");
      d.factors.emplace_back();
      current = k;
    } else if (key == "vertex") {
      expect_words(l, 2);
      if (!current) fail(l, "vertex outside a factor");
      d.factors[*current].vertices.push_back(l.words[1]);
    } else if (key == "edge") {
      expect_words(l, 3);
      if (!current) fail(l, "edge outside a factor");
      d.factors[*current].edges.emplace_back(l.words[1], l.words[2]);
    } else if (key == "ray") {
      expect_words(l, 4);
      if (!current) fail(l, "ray outside a factor");
      if (l.words[2] != "at") fail(l, "expected 'ray <id> at <vertex>'");
      d.factors[*current].rays.emplace_back(l.words[1], l.words[3]);
    } else if (key == "point") {
      const auto eq = l.text.find('=');
      if (l.words.size() < 4 || l.words[2] != "=" || eq == std::string::npos) {
        fail(l, "expected 'point <name> = (<coord>,...)'");
      }
      try {
        d.points.push_back({l.words[1], parse_raw_point(l.text.substr(eq + 1))});
      } catch (const InputError& e) {
        fail(l, e.what());
      }
    } else {
      fail(l, "unknown keyword '" + key + "'");
    }
  }
  if (!have_name) throw InputError("missing complex line");
  if (!declared) throw InputError("missing factors line");
  if (d.factors.size() != *declared) {
    throw InputError("declared " + std::to_string(*declared) + " factors, found " + std::to_string(d.factors.size()));
  }
  return d;
}

std::string format_complex(const ComplexDescription& d) {
  std::ostringstream out;
  out << "complex " << d.name << "\n";
  out << "factors " << d.factors.size() << "\n";
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const FactorDescription& f = d.factors[i];
    out << "factor " << i << "\n";
    for (const auto& v : f.vertices) out << "vertex " << v << "\n";
    for (const auto& [a, b] : f.edges) out << "edge " << a << " " << b << "\n";
    for (const auto& [r, v] : f.rays) out << "ray " << r << " at " << v << "\n";
  }
  for (const PointAlias& p : d.points) {
    out << "point " << p.name << " = (";
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      const RawCoord& c = p.coords[i];
      if (i) out << ",";
      switch (c.kind) {
        case CoordKind::Core: out << "v:" << c.id; break;
        case CoordKind::Ray: out << "r:" << c.id << ":" << c.depth; break;
        case CoordKind::End: out << "end:" << c.id; break;
      }
    }
    out << ")\n";
  }
  return out.str();
}

RecordedOracle parse_oracle(std::string_view text) {
  std::string name;
  std::optional<int> depth;
  std::optional<std::size_t> declared;
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> index;
  std::vector<OracleRecord> records;
  for (const Line& l : lines_of(text)) {
    const std::string& key = l.words[0];
    if (key == "oracle") {
      expect_words(l, 2);
      if (!name.empty()) fail(l, "duplicate oracle line");
      name = l.words[1];
    } else if (key == "depth") {
      expect_words(l, 2);
      depth = static_cast<int>(parse_uint(l, l.words[1]));
    } else if (key == "points") {
      expect_words(l, 2);
      declared = parse_uint(l, l.words[1]);
    } else if (key == "point") {
      expect_words(l, 2);
      if (!declared) fail(l, "point before points line");
      if (ids.size() == *declared) fail(l, "more points than declared");
      if (!index.emplace(l.words[1], ids.size()).second) fail(l, "duplicate point '" + l.words[1] + "'");
      ids.push_back(l.words[1]);
    } else if (key == "quad") {
      expect_words(l, 11);
      if (!declared || ids.size() != *declared) fail(l, "quad before the point list is complete");
      if (l.words[5] != "admissible" || l.words[7] != "crt") fail(l, "malformed quad record");
      OracleRecord r;
      for (int k = 0; k < 4; ++k) {
        const auto it = index.find(l.words[1 + k]);
        if (it == index.end()) fail(l, "unknown point '" + l.words[1 + k] + "'");
        r.quad[k] = it->second;
      }
      if (l.words[6] != "0" && l.words[6] != "1") fail(l, "admissible flag must be 0 or 1");
      r.admissible = l.words[6] == "1";
      const Count a = parse_count(l, l.words[8]);
      const Count b = parse_count(l, l.words[9]);
      const Count c = parse_count(l, l.words[10]);
      r.crt = CrtTriple::from_sums(a, b, c);
      if (r.crt.entries() != std::array<Count, 3>{a, b, c}) fail(l, "crt entries are not in canonical form");
      records.push_back(r);
    } else {
      fail(l, "unknown keyword '" + key + "'");
    }
  }
  if (name.empty()) throw InputError("missing oracle line");
  if (!depth) throw InputError("missing depth line");
  if (!declared || ids.size() != *declared) throw InputError("point list is incomplete");
  return RecordedOracle(name, *depth, ids, std::move(records));
}

std::string format_oracle(const CrossRatioOracle& o) {
  std::ostringstream out;
  out << "oracle " << o.name() << "\n";
  out << "depth " << o.depth() << "\n";
  out << "points " << o.size() << "\n";
  for (const auto& id : o.points()) out << "point " << id << "\n";
  for (const OracleRecord& r : RecordedOracle::records_of(o)) {
    out << "quad";
    for (std::size_t k : r.quad) out << " " << o.points()[k];
    out << " admissible " << (r.admissible ? 1 : 0) << " crt";
    for (const Count& c : r.crt.entries()) out << " " << c.to_string();
    out << "\n";
  }
  return out.str();
}

std::vector<std::pair<std::string, std::string>> parse_pairing(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  for (const Line& l : lines_of(text)) {
    expect_words(l, 2);
    if (!seen.insert(l.words[0]).second) fail(l, "'" + l.words[0] + "' is paired twice");
    out.emplace_back(l.words[0], l.words[1]);
  }
  return out;
}

std::vector<std::size_t> map_from_pairing(const std::vector<std::pair<std::string, std::string>>& pairs,
                                          const CrossRatioOracle& from, const CrossRatioOracle& to) {
  std::vector<std::optional<std::size_t>> f(from.size());
  for (const auto& [a, b] : pairs) f[from.index_of(a)] = to.index_of(b);
  std::vector<std::size_t> out;
  std::string missing;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i]) missing += (missing.empty() ? "" : ", ") + from.points()[i];
    else out.push_back(*f[i]);
  }
  if (!missing.empty()) throw InputError("pairing misses " + missing);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace ccr
