#include "crflat/cli.hpp"

#include "crflat/report.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace crflat {

namespace {

using report::json;

struct Options {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  int samples = 5;
  Tolerances tol;
  std::string format = "text";
  std::string point;
  int order = 4;
  std::string mode = "exact";
  bool timing = false;
  bool serial = false;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return kExitUsage;
    case ErrorKind::Parse:
    case ErrorKind::NonRational:
    case ErrorKind::Dimension:
    case ErrorKind::InvalidModel: return kExitParse;
    case ErrorKind::Pole:
    case ErrorKind::SingularSubstitution:
    case ErrorKind::OffHypersurface:
    case ErrorKind::Singular:
    case ErrorKind::NonEmbedding:
    case ErrorKind::NormalizationFailure:
    case ErrorKind::DegenerateReeb:
    case ErrorKind::Chart: return kExitMath;
    case ErrorKind::Structural:
    case ErrorKind::Inconsistency: return kExitInconsistency;
  }
  return kExitInconsistency;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BoundaryPoint parse_point(const std::string& text, int n) {
  std::vector<Scalar> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(parse_constant(item));
  if (static_cast<int>(parts.size()) != n + 1)
    throw Error(ErrorKind::Usage, "--point needs " + std::to_string(n + 1) + " comma-separated values z_1..z_n,u");
  BoundaryPoint p;
  p.z0.assign(parts.begin(), parts.end() - 1);
  if (!parts.back().is_real()) throw Error(ErrorKind::Usage, "--point: u must be real");
  p.u0 = parts.back();
  return p;
}

std::vector<BoundaryPoint> sample_points(const Options& o, int n, bool single) {
  std::vector<BoundaryPoint> pts;
  if (!o.point.empty()) pts.push_back(parse_point(o.point, n));
  else pts = halton_points(n, single ? 1 : o.samples, o.seed);
  if (o.mode == "float")
    for (auto& p : pts) p = p.to_float();
  return pts;
}

Execution exec_of(const Options& o) { return o.serial ? Execution::Serial : Execution::Parallel; }

json run_rank(const Options& o, const MapSpec& F, int& code) {
  auto pts = sample_points(o, F.n, false);
  Kappa0Report k = kappa0(F, pts, o.tol, exec_of(o));
  json rows = json::array();
  int ok = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    json r{{"index", i}};
    if (k.points[i].value) {
      r["report"] = report::to_json(*k.points[i].value);
      ++ok;
    } else {
      r["point"] = report::to_json(pts[i]);
      r["failure"] = report::to_json(*k.points[i].failure);
    }
    rows.push_back(r);
  }
  if (ok == 0) code = exit_code(k.points[0].failure->kind);
  return json{{"points", rows}, {"kappa0", k.kappa0}, {"successfulPoints", ok}};
}

json run_normalize(const Options& o, const MapSpec& F) {
  BoundaryPoint p = sample_points(o, F.n, true)[0];
  MapSpec G = to_siegel(F);
  NormalizedJet s2 = normalize_star2(jets_at(G, p, o.order).holomorphic, G.n, o.tol.normalize);
  Star3Result s3 = normalize_star3(G, p, o.tol);
  return json{{"point", report::to_json(p)}, {"order", o.order}, {"star2", report::to_json(s2)}, {"star3", report::to_json(s3)}};
}

json run_frame(const Options& o, const MapSpec& F) {
  BoundaryPoint p = sample_points(o, F.n, true)[0];
  json out{{"point", report::to_json(p)}};
  LiftFrame g = build_general_lift(F, p, o.tol.frame);
  out["general"] = report::to_json(g);
  out["general"]["maurerCartan"] = report::to_json(pullback_mc(g).relations);
  try {
    LiftFrame s = build_spherical_lift(F, p, o.tol.frame);
    out["spherical"] = report::to_json(s);
    out["spherical"]["maurerCartan"] = report::to_json(pullback_mc(s).relations);
  } catch (const Error& e) {
    out["spherical"] = report::to_json(Failure{e.kind(), e.what()});
  }
  return out;
}

json run_sff(const Options& o, const MapSpec& F, int& code) {
  auto pts = sample_points(o, F.n, false);
  struct Row {
    SFFTensor q;
    ExtrinsicReport x;
    EquivalenceReport e;
  };
  auto rows = map_points<Row>(
      pts,
      [&](const BoundaryPoint& p) {
        Row r;
        r.q = sff_frame(F, p, o.tol);
        r.x = sff_extrinsic(F, p, o.tol);
        r.e = check_equivalence(F, p, o.tol);
        return r;
      },
      exec_of(o));
  json arr = json::array();
  int disagreements = 0, ok = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    json r{{"index", i}};
    if (rows[i].value) {
      ++ok;
      r["frame"] = report::to_json(rows[i].value->q);
      r["extrinsic"] = report::to_json(rows[i].value->x);
      r["equivalence"] = report::to_json(rows[i].value->e);
      if (!rows[i].value->e.agree) ++disagreements;
    } else {
      r["point"] = report::to_json(pts[i]);
      r["failure"] = report::to_json(*rows[i].failure);
    }
    arr.push_back(r);
  }
  if (disagreements > 0) code = kExitInconsistency;
  else if (ok == 0) code = exit_code(rows[0].failure->kind);
  return json{{"points", arr}, {"disagreements", disagreements}, {"successfulPoints", ok}};
}

json run_check_aut(const Options& o) {
  std::string dir = o.input.find('/') == std::string::npos ? "." : o.input.substr(0, o.input.rfind('/'));
  Automorphism A = parse_aut(read_file(o.input), dir);
  return json{{"kind", aut_kind_name(A.params.kind)},
              {"dim", A.dim},
              {"matrix", report::to_json(A.matrix)},
              {"membership", report::to_json(membership(A.matrix, o.tol.frame))}};
}

void add_common(CLI::App* sub, Options& o, bool sampled) {
  sub->add_option("input", o.input, "input file")->required();
  sub->add_option("--seed", o.seed, "sample-point seed")->capture_default_str();
  sub->add_option("--rank-tol", o.tol.rank, "rank tolerance")->capture_default_str();
  sub->add_option("--vanish-tol", o.tol.vanish, "vanishing tolerance")->capture_default_str();
  sub->add_option("--frame-tol", o.tol.frame, "frame residual tolerance")->capture_default_str();
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  sub->add_option("--mode", o.mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  sub->add_flag("--timing", o.timing, "include elapsed time in the report");
  sub->add_flag("--serial", o.serial, "disable the parallel point sweep");
  sub->add_option("--point", o.point, "base point z_1,...,z_n,u (rational expressions)");
  if (sampled) sub->add_option("--samples", o.samples, "number of sample points")->check(CLI::Range(1, 100000))->capture_default_str();
  sub->add_option("--order", o.order, "jet order for normalization")->check(CLI::Range(4, kMaxOrder))->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Geometric rank, normal forms, adapted frames and second fundamental forms of rational proper maps between balls."};
  app.require_subcommand(1);
  struct Cmd {
    const char* name;
    const char* help;
    bool sampled;
  };
  const Cmd cmds[] = {{"rank", "geometric rank at sample points and kappa0", true},
                      {"normalize", "star2 and star3 normal forms at one point", false},
                      {"sff", "second fundamental form by frames and extrinsically", true},
                      {"flat", "flatness verdict with a linear witness", true},
                      {"frame", "adapted lifts and Maurer-Cartan relations at one point", false},
                      {"check-aut", "membership of an automorphism in SU(N+1,1) and GL^Q", false}};
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o, c.sampled);
    sub->callback([&o, name = std::string(c.name)] { o.command = name; });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  json doc;
  doc["tool"] = "crflat";
  doc["command"] = o.command;
  try {
    std::string text = read_file(o.input);
    doc["input"] = json{{"path", o.input}, {"digest", report::hex64(report::fnv1a(text))}};
    doc["mode"] = o.mode;
    doc["seed"] = o.seed;
    doc["tolerances"] = report::to_json(o.tol);
    if (o.command == "check-aut") {
      doc["results"] = run_check_aut(o);
    } else {
      MapSpec F = parse_map(text);
      doc["map"] = json{{"name", F.name}, {"model", model_name(F.model)}, {"n", F.n}, {"N", F.N}};
      if (o.command == "rank") {
        doc["samples"] = o.point.empty() ? o.samples : 1;
        doc["results"] = run_rank(o, F, code);
      } else if (o.command == "normalize") {
        doc["results"] = run_normalize(o, F);
      } else if (o.command == "sff") {
        doc["samples"] = o.point.empty() ? o.samples : 1;
        doc["results"] = run_sff(o, F, code);
      } else if (o.command == "flat") {
        FlatnessVerdict v = flatness_verdict(F, o.samples, o.tol, o.seed, exec_of(o));
        doc["samples"] = o.samples;
        doc["results"] = report::to_json(v);
      } else if (o.command == "frame") {
        doc["results"] = run_frame(o, F);
      }
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << kind_name(e.kind()) << " error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInconsistency;
  }
  doc["exitCode"] = code;
  if (o.timing)
    doc["timingSeconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.format == "json") out << doc.dump(2) << "\n";
  else out << report::render_text(doc);
  return code;
}

}  // namespace crflat
