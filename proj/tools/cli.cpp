#include "ccr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "ccr/error.hpp"
#include "ccr/fixtures.hpp"
#include "ccr/io.hpp"
#include "ccr/isomorphism.hpp"
#include "ccr/oracle.hpp"
#include "ccr/reconstruct.hpp"
#include "ccr/rigidity.hpp"
#include "ccr/roller.hpp"
#include "ccr/skinny.hpp"

namespace ccr::cli {

namespace {

struct Settings {
  std::optional<int> depth;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

class Session {
 public:
  Session(const Settings& s, std::ostream& out) : s_(s), out_(out) {}

  void header(const std::string& depth) {
    if (!s_.quiet) out_ << "# depth " << depth << "\n";
  }
  void header(int depth) { header(std::to_string(depth)); }

  CubeComplex load(const std::string& path) const { return CubeComplex::load(parse_complex(read_file(path))); }

  int validate(const std::string& path) {
    const CubeComplex x = load(path);
    header(default_depth(x, {}));
    out_ << "complex " << x.name() << "\n";
    for (std::size_t i = 0; i < x.factor_count(); ++i) {
      const Factor& f = x.factor(i);
      out_ << "factor " << i << " vertices " << f.core().size() << " edges " << f.core().edges().size() << " rays "
           << f.ray_count() << " core-walls " << f.core_walls().size() << " diameter " << f.core().diameter() << "\n";
    }
    const EligibilityReport& e = x.eligibility();
    if (e.eligible()) {
      out_ << "eligible\n";
      return 0;
    }
    out_ << "ineligible\n";
    for (const auto& [factor, id] : e.extremal_vertices) out_ << "extremal " << factor << " " << id << "\n";
    if (e.is_line) out_ << "line\n";
    if (e.is_point) out_ << "point\n";
    return 0;
  }

  int boundary(const std::string& path) {
    const CubeComplex x = load(path);
    const int window = s_.depth.value_or(0);
    const BoundaryEnumeration b = enumerate_boundary(x, window);
    header(window);
    out_ << (b.complete ? "complete" : "partial") << " " << b.points.size() << "\n";
    for (const Point& p : b.points) {
      const std::string name = x.name_of(p);
      const std::string coords = x.format(p);
      out_ << name;
      if (name != coords) out_ << " " << coords;
      out_ << "\n";
    }
    return 0;
  }

  std::vector<Point> resolve_all(const CubeComplex& x, const std::vector<std::string>& names) const {
    std::vector<Point> pts;
    std::string unresolved;
    for (const auto& n : names) {
      try {
        pts.push_back(x.resolve(n));
      } catch (const InputError&) {
        unresolved += (unresolved.empty() ? "" : ", ") + n;
      }
    }
    if (!unresolved.empty()) throw InputError("unresolved point names: " + unresolved);
    return pts;
  }

  int cr(const std::string& path, const std::vector<std::string>& names, bool extended) {
    const CubeComplex x = load(path);
    const auto p = resolve_all(x, names);
    CrossRatioOptions opts;
    opts.depth = s_.depth;
    opts.allow_extended = extended;
    const CrossRatioResult r = cross_ratio(x, p[0], p[1], p[2], p[3], opts);
    header(r.depth);
    out_ << r.value.to_string() << "\n";
    return 0;
  }

  int crt(const std::string& path, const std::vector<std::string>& names) {
    const CubeComplex x = load(path);
    const auto p = resolve_all(x, names);
    CrossRatioOptions opts;
    opts.depth = s_.depth;
    const CrtTriple t = ccr::crt(x, p[0], p[1], p[2], p[3], opts);
    header(s_.depth.value_or(default_depth(x, p)));
    out_ << t.to_string() << "\n";
    return 0;
  }

  int median(const std::string& path, const std::vector<std::string>& names) {
    const CubeComplex x = load(path);
    const auto p = resolve_all(x, names);
    const Point m = median_bar(x, p[0], p[1], p[2]);
    header(s_.depth.value_or(default_depth(x, p)));
    out_ << x.format(m) << "\n";
    return 0;
  }

  int decompose(const std::string& path) {
    const CubeComplex x = load(path);
    const Decomposition d = classify_vertices(x);
    const Factor& f = x.factor(0);
    const MedianGraph& g = f.core();
    header(default_depth(x, {}));
    for (Vertex v : d.fat) out_ << "fat " << g.id(v) << "\n";
    for (const auto& [u, v] : d.fat_edges) out_ << "edge " << g.id(u) << " " << g.id(v) << "\n";
    for (const SkinnySegment& s : d.segments) {
      out_ << "segment " << g.id(s.u) << " " << g.id(s.v) << " " << s.length();
      for (Vertex v : s.interior) out_ << " " << g.id(v);
      out_ << "\n";
    }
    for (const SkinnyRay& r : d.rays) {
      out_ << "ray " << g.id(r.base) << " " << f.ray_id(r.ray);
      for (Vertex v : r.core_prefix) out_ << " " << g.id(v);
      out_ << "\n";
    }
    return 0;
  }

  int oracle_dump(const std::string& path) {
    const CubeComplex x = load(path);
    const LiveOracle o = LiveOracle::sampled(x, 0, s_.depth);
    header(o.depth());
    out_ << format_oracle(o);
    return 0;
  }

  int reconstruct_cmd(const std::string& path) {
    const RecordedOracle o = parse_oracle(read_file(path));
    const ReconstructedComplex r = reconstruct(o);
    header(o.depth());
    out_ << format_complex(r.description());
    return 0;
  }

  int check_mobius(const std::string& dx, const std::string& dy, const std::string& pairing) {
    const RecordedOracle ox = parse_oracle(read_file(dx));
    const RecordedOracle oy = parse_oracle(read_file(dy));
    const auto f = map_from_pairing(parse_pairing(read_file(pairing)), ox, oy);
    const MobiusVerdict v = is_mobius(f, ox, oy);
    header(std::to_string(ox.depth()) + " " + std::to_string(oy.depth()));
    if (!v.forward_ok) {
      out_ << "NOT MOBIUS\n";
      out_ << "counterexample " << describe(*v.counterexample, ox, oy, f) << "\n";
      return 1;
    }
    std::vector<std::string> parts{"MOBIUS"};
    if (!v.injective) parts.push_back("NOT INJECTIVE");
    if (!v.surjective) parts.push_back("NOT SURJECTIVE");
    if (v.bijective()) {
      parts.push_back("BIJECTIVE");
      parts.push_back(*v.inverse_ok ? "INVERSE MOBIUS" : "INVERSE NOT MOBIUS");
    }
    if (!v.bijective() || !*v.inverse_ok) parts.push_back("extension refused");
    for (std::size_t i = 0; i < parts.size(); ++i) out_ << (i ? "; " : "") << parts[i];
    out_ << "\n";
    if (v.inverse_counterexample) {
      std::vector<std::size_t> g(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) g[f[i]] = i;
      out_ << "counterexample " << describe(*v.inverse_counterexample, oy, ox, g) << "\n";
      return 1;
    }
    return 0;
  }

  int verify_theorem(const std::string& fx, const std::string& fy, const std::string& pairing) {
    const CubeComplex x = load(fx);
    const CubeComplex y = load(fy);
    if (!x.single_factor() || !y.single_factor()) {
      throw PreconditionError("verify-theorem needs single-factor complexes");
    }
    const LiveOracle ox = LiveOracle::boundary(x, s_.depth);
    const LiveOracle oy = LiveOracle::boundary(y, s_.depth);
    const auto f = map_from_pairing(parse_pairing(read_file(pairing)), ox, oy);
    header(ox.depth());
    CubicalMap map;
    try {
      map = extend_isomorphism(f, ox, oy);
    } catch (const PreconditionError& e) {
      const std::string what = e.what();
      if (what.rfind("extension refused", 0) != 0) throw;
      out_ << what << "\n";
      const MobiusVerdict v = is_mobius(f, ox, oy);
      if (v.counterexample) out_ << "counterexample " << describe(*v.counterexample, ox, oy, f) << "\n";
      return 1;
    }
    const MedianGraph& g = x.factor(0).core();
    for (Vertex v = 0; v < g.size(); ++v) {
      out_ << "vertex " << g.id(v) << " -> " << y.format(map.apply(Point{{Coord::core(v)}})) << "\n";
    }
    for (RayIndex r = 0; r < x.factor(0).ray_count(); ++r) {
      out_ << "ray " << x.factor(0).ray_id(r) << " -> " << y.factor(0).ray_id(map.ray_image[r]) << "\n";
    }
    const UniquenessReport u = verify_uniqueness(f, ox, oy, map);
    out_ << "isomorphisms " << u.isomorphisms << "\n";
    out_ << "extending " << u.extending << "\n";
    out_ << (u.ok() ? "UNIQUE" : "NOT UNIQUE") << "\n";
    return u.ok() ? 0 : 1;
  }

  int generate(std::optional<std::uint64_t> relabel, bool pairing) {
    if (!s_.seed) throw InputError("generate needs --seed");
    const ComplexDescription d = fixtures::random_eligible(*s_.seed);
    if (!relabel) {
      if (pairing) throw InputError("--pairing needs --relabel");
      out_ << format_complex(d);
      return 0;
    }
    const fixtures::Relabeling r = fixtures::relabel(d, *relabel);
    if (pairing) {
      for (const auto& [from, to] : r.rays) out_ << from << " " << to << "\n";
    } else {
      out_ << format_complex(r.image);
    }
    return 0;
  }

 private:
  const Settings& s_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross ratios on Roller boundaries of cube complexes", "ccr"};
  app.fallthrough();
  app.require_subcommand(1);
  Settings s;
  app.add_option("--depth", s.depth, "truncation depth (window for boundary)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", s.format, "output format")->check(CLI::IsMember({"text"}));
  app.add_option("--seed", s.seed, "seed for generated complexes");
  app.add_flag("--quiet", s.quiet, "omit the depth header");

  std::function<int()> action;
  Session session(s, out);

  std::string file;
  std::string file2;
  std::string file3;
  std::vector<std::string> names;
  bool extended = false;
  std::optional<std::uint64_t> relabel;
  bool pairing = false;

  auto* validate = app.add_subcommand("validate", "check a complex file and report eligibility");
  validate->add_option("file", file)->required();
  validate->callback([&] { action = [&] { return session.validate(file); }; });

  auto* boundary = app.add_subcommand("boundary", "list boundary points");
  boundary->add_option("file", file)->required();
  boundary->callback([&] { action = [&] { return session.boundary(file); }; });

  auto* cr = app.add_subcommand("cr", "cross ratio of four points");
  cr->add_option("file", file)->required();
  cr->add_option("points", names)->required()->expected(4);
  cr->add_flag("--extended", extended, "accept non-admissible tuples with a determinate value");
  cr->callback([&] { action = [&] { return session.cr(file, names, extended); }; });

  auto* crt = app.add_subcommand("crt", "cross ratio triple of four points");
  crt->add_option("file", file)->required();
  crt->add_option("points", names)->required()->expected(4);
  crt->callback([&] { action = [&] { return session.crt(file, names); }; });

  auto* median = app.add_subcommand("median", "median of three points");
  median->add_option("file", file)->required();
  median->add_option("points", names)->required()->expected(3);
  median->callback([&] { action = [&] { return session.median(file, names); }; });

  auto* decompose = app.add_subcommand("decompose", "fat vertices, skinny segments and rays");
  decompose->add_option("file", file)->required();
  decompose->callback([&] { action = [&] { return session.decompose(file); }; });

  auto* dump = app.add_subcommand("oracle-dump", "tabulate admissibility and crt over the boundary");
  dump->add_option("file", file)->required();
  dump->callback([&] { action = [&] { return session.oracle_dump(file); }; });

  auto* rec = app.add_subcommand("reconstruct", "rebuild a complex from an oracle dump");
  rec->add_option("dump", file)->required();
  rec->callback([&] { action = [&] { return session.reconstruct_cmd(file); }; });

  auto* mob = app.add_subcommand("check-mobius", "check a boundary map between two dumps");
  mob->add_option("dumpX", file)->required();
  mob->add_option("dumpY", file2)->required();
  mob->add_option("pairing", file3)->required();
  mob->callback([&] { action = [&] { return session.check_mobius(file, file2, file3); }; });

  auto* thm = app.add_subcommand("verify-theorem", "extend a boundary map to an isomorphism and check uniqueness");
  thm->add_option("fileX", file)->required();
  thm->add_option("fileY", file2)->required();
  thm->add_option("pairing", file3)->required();
  thm->callback([&] { action = [&] { return session.verify_theorem(file, file2, file3); }; });

  auto* gen = app.add_subcommand("generate", "print a random eligible complex");
  gen->add_option("--relabel", relabel, "print a relabelled copy made with this seed");
  gen->add_flag("--pairing", pairing, "print the ray pairing of the relabelling instead");
  gen->callback([&] { action = [&] { return session.generate(relabel, pairing); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const InternalError& e) {
    err << "error: inconsistent data: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace ccr::cli
