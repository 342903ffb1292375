#include "hmfan/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

namespace hmfan::cli {

namespace {

Check check(std::string name, bool pass, std::string detail = {}) {
  return {std::move(name), pass, std::move(detail), false};
}

DivisorClass random_divisor(std::mt19937& rng, int lo = -6, int hi = 6) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 4);
  auto r = [&] { return Rational(num(rng), den(rng)); };
  return DivisorClass(r(), r(), r(), r());
}

}  // namespace

Suite table_suite(const std::map<std::string, DivisorClass>& divisors) {
  Suite s{"table", {}};
  const auto& R = registry();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 14; ++j) {
      std::string name = std::string(kTableCurves[i]) + "." + kTableDivisors[j];
      auto it = divisors.find(kTableDivisors[j]);
      if (it == divisors.end()) {
        s.checks.push_back(check(name, false, "missing"));
        continue;
      }
      Rational got = pair(R.curve(kTableCurves[i]), it->second);
      s.checks.push_back(check(name + "=" + std::to_string(kIntersectionTable[i][j]), got == kIntersectionTable[i][j],
                               got.get_str()));
    }
  return s;
}

Suite cubic_suite() {
  Suite s{"cubic", {}};
  const auto& H = divisor("H");
  const auto& A = divisor("A");
  s.checks.push_back(check("H^3=5", cubic(H) == 5, cubic(H).get_str()));
  s.checks.push_back(check("H^2.A=10", trilinear(H, H, A) == 10, trilinear(H, H, A).get_str()));
  std::mt19937 rng(7);
  bool sym = true, pol = true, diag = true;
  for (int k = 0; k < 100; ++k) {
    auto d = random_divisor(rng), e = random_divisor(rng), f = random_divisor(rng);
    Rational t = trilinear(d, e, f);
    sym = sym && t == trilinear(e, d, f) && t == trilinear(d, f, e) && t == trilinear(f, e, d);
    diag = diag && trilinear(d, d, d) == cubic(d);
    Rational lhs = cubic(d + e);
    Rational rhs = cubic(d) + 3 * trilinear(d, d, e) + 3 * trilinear(d, e, e) + cubic(e);
    pol = pol && lhs == rhs;
  }
  s.checks.push_back(check("trilinear symmetric", sym));
  s.checks.push_back(check("trilinear(d,d,d)=cubic(d)", diag));
  s.checks.push_back(check("polarization", pol));
  return s;
}

Suite relations_suite() {
  Suite s{"relations", {}};
  DivisorClass four_h = Rational(4) * divisor("H");
  auto D = [](const std::string& n) { return divisor(n); };
  s.checks.push_back(check("Delta1+Delta3=4H", D("Delta1") + D("Delta3") == four_h));
  s.checks.push_back(check("Delta2+Delta4=4H", D("Delta2") + D("Delta4") == four_h));
  for (int i = 1; i <= 4; ++i) {
    std::string k = std::to_string(i);
    s.checks.push_back(check("Nabla" + k + "+Nabla'" + k + "=4H", D("Nabla" + k) + D("NablaP" + k) == four_h));
  }
  return s;
}

Suite symmetry_suite() {
  Suite s{"symmetry", {}};
  std::vector<FanSymmetry> gs = translation_words(12);
  gs.push_back(FanSymmetry::iota());
  gs.push_back(compose(FanSymmetry::iota(), FanSymmetry::translation(Rational(1, 2), Rational(-1, 2))));
  std::mt19937 rng(11);
  bool q = true, g = true, c = true, a = true;
  for (const auto& sym : gs) {
    a = a && act_on_divisor(sym, divisor("A")) == divisor("A");
    for (int k = 0; k < 10; ++k) {
      auto d = random_divisor(rng), e = random_divisor(rng);
      auto gd = act_on_divisor(sym, d), ge = act_on_divisor(sym, e);
      q = q && q_form(gd, ge) == q_form(d, e);
      g = g && gamma_of(gd) == gamma_of(d);
      c = c && cubic(gd) == cubic(d);
      auto lam = act_on_curve(sym, curve("Lambda1"));
      g = g && pair(lam, gd) == pair(curve("Lambda1"), d);
    }
  }
  s.checks.push_back(check("Q invariant", q));
  s.checks.push_back(check("Gamma pairing invariant", g));
  s.checks.push_back(check("cubic invariant", c));
  s.checks.push_back(check("A fixed", a));
  return s;
}

Suite star_suite() {
  Suite s{"star", {}};
  FanStore store = explore(4);
  auto cones = cones_at_ray(divisor("H"), store);
  std::map<ConeType, int> types;
  for (const auto* m : cones) ++types[m->type()];
  s.checks.push_back(check("cones at H=14", cones.size() == 14, std::to_string(cones.size())));
  s.checks.push_back(check("types 1/5/8",
                           types[ConeType::Tiling] == 1 && types[ConeType::Pyramid] == 5 && types[ConeType::Lozengoid] == 8));
  std::set<IntRay> want;
  for (const char* base : {"Delta", "Nabla", "NablaP"})
    for (int i = 1; i <= 4; ++i) want.insert(canonical_ray(divisor(base + std::to_string(i))));
  auto nb = neighbor_rays(divisor("H"), store);
  s.checks.push_back(check("neighbours of H=12 registry classes", std::set<IntRay>(nb.begin(), nb.end()) == want,
                           std::to_string(nb.size())));
  return s;
}

Suite detseq_suite() {
  Suite s{"detseq", {}};
  std::mt19937 rng(3);
  bool closed = true, four = true;
  for (int k = 0; k < 20; ++k) {
    auto d0 = random_divisor(rng, -9, 9), d1 = random_divisor(rng, -9, 9);
    for (long i = -20; i <= 20; ++i) {
      closed = closed && d_closed_form(d0, d1, i) == d_sequence(d0, d1, i);
      four = four && d_sequence(d0, d1, i - 1) + d_sequence(d0, d1, i + 1) == Rational(4) * d_sequence(d0, d1, i);
    }
  }
  s.checks.push_back(check("closed form = recurrence", closed));
  s.checks.push_back(check("D(i-1)+D(i+1)=4D(i)", four));
  auto [p, m] = limit_rays(divisor("H"), divisor("Delta1"));
  QuadExt t = kSqrt3.inverse();
  s.checks.push_back(check("limit rays of (H,Delta1)", p[1] == -t && m[1] == t && p[3] == QuadExt(1) && p[0] == QuadExt(0),
                           to_string(p)));
  return s;
}

Suite boundary_suite() {
  Suite s{"boundary", {}};
  auto fwd = forward_flop_check(frame_word("F"));
  s.checks.push_back(check("A' from flop path", fwd.agrees && fwd.solved == divisor("AP"), to_string(fwd.solved)));
  auto rev = forward_flop_check(Frame{});
  s.checks.push_back(check("A from A'' tiling", rev.agrees && rev.predecessor_apex == divisor("APP"),
                           to_string(rev.predecessor_apex)));
  auto qa = quadric_invariant(divisor("AP")), qaa = quadric_invariant(divisor("APP"));
  s.checks.push_back(check("quadric(A')=2", qa && *qa == 2, qa ? qa->get_str() : "undefined"));
  s.checks.push_back(check("quadric(A'')=7/2", qaa && *qaa == Rational(7, 2), qaa ? qaa->get_str() : "undefined"));
  Check eleven = check("quadric(A'')=11", qaa && *qaa == 11, qaa ? qaa->get_str() : "undefined");
  eleven.informational = true;
  s.checks.push_back(eleven);
  s.checks.push_back(check("quadric(A) undefined", !quadric_invariant(divisor("A"))));
  bool constant = true;
  auto words = translation_words(50);
  for (const char* seed : {"AP", "APP"}) {
    auto orb = boundary_orbit(divisor(seed), words);
    constant = constant && orb.size() == 50;
    for (const auto& b : orb) constant = constant && b.quadric == quadric_invariant(divisor(seed));
  }
  s.checks.push_back(check("quadric constant on 50-orbits", constant));
  return s;
}

Suite funddom_suite() {
  Suite s{"funddom", {}};
  auto rep = verify_convexity(build_domain());
  s.checks = rep.checks;
  return s;
}

std::vector<Suite> run_verify() {
  return {table_suite(registry().divisors()), cubic_suite(),    relations_suite(), symmetry_suite(),
          star_suite(),                       detseq_suite(),   boundary_suite(),  funddom_suite()};
}

nlohmann::json verify_report(const std::vector<Suite>& suites) {
  nlohmann::json j;
  bool all = true;
  j["checks"] = nlohmann::json::object();
  j["informational"] = nlohmann::json::object();
  j["suites"] = nlohmann::json::object();
  for (const auto& s : suites) {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& c : s.checks) {
      checks[c.name] = c.pass;
      (c.informational ? j["informational"] : j["checks"])[c.name] = c.pass;
    }
    j["suites"][s.name] = {{"pass", s.pass()}, {"checks", checks}};
    all = all && s.pass();
  }
  j["pass"] = all;
  return j;
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "svg") return Format::Svg;
  if (s == "json") return Format::Json;
  if (s == "text" || s == "txt") return Format::Text;
  throw ParseError("unknown format '" + s + "'");
}

Format format_from_path(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  if (ext.empty()) throw ParseError("output path needs an extension (.csv, .svg or .json)");
  return format_from_string(ext.substr(1));
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

std::string marking_of(const MarkedModel& m) { return m.cone.marking(); }

int cmd_verify(bool json, std::ostream& out) {
  auto suites = run_verify();
  auto rep = verify_report(suites);
  if (json) {
    out << rep.dump(2) << '\n';
  } else {
    for (const auto& s : suites) {
      out << (s.pass() ? "ok   " : "FAIL ") << s.name << '\n';
      for (const auto& c : s.checks)
        if (!c.pass) out << (c.informational ? "     note: " : "     failed: ") << c.name << "  " << c.detail << '\n';
    }
  }
  return rep["pass"].get<bool>() ? kOk : kFailed;
}

int cmd_explore(int depth, const std::string& store_path, bool resume, const std::string& window,
                std::optional<unsigned> seed, std::ostream& out) {
  FanStore store;
  if (resume && std::filesystem::exists(store_path)) store = load_store(store_path);
  ExploreOptions opt;
  opt.window = parse_rational(window);
  opt.shuffle_seed = seed;
  explore_into(store, depth, opt);
  save_store(store, store_path);
  out << "models " << store.size() << '\n';
  for (auto [c, n] : store.class_counts()) out << "  " << to_string(c) << ' ' << n << '\n';
  return kOk;
}

int cmd_locate(const std::string& literal, const std::string& store_path, bool json, std::ostream& out) {
  DivisorClass d = parse_divisor(literal);
  FanStore store;
  if (!store_path.empty() && std::filesystem::exists(store_path)) store = load_store(store_path);
  MarkedModel m = locate(d, store);
  if (!store_path.empty()) save_store(store, store_path);
  Membership mem = membership(d, m.cone);
  if (json) {
    nlohmann::json j = model_json(m);
    j["membership"] = to_string(mem);
    j["divisor"] = class_json(d);
    out << j.dump(2) << '\n';
  } else {
    out << m.key << '\n'
        << "type " << to_string(m.type()) << ", class " << to_string(m.iso) << ", marking " << marking_of(m)
        << ", " << to_string(mem) << '\n';
  }
  return kOk;
}

int cmd_boundary(int n, Format fmt, std::ostream& out) {
  auto cert = non_c2_certificate(n);
  auto it = iterated_process();
  if (fmt == Format::Csv) {
    out << "seed,coefficient,k,ray,slice_d1,slice_d2,slice_d3,slice_d4,distance2\n";
    for (const auto& s : cert.sequences)
      for (std::size_t k = 0; k < s.rays.size(); ++k) {
        out << to_string(s.seed) << ',' << s.coefficient.get_str() << ',' << k + 1 << ",\"" << to_string(s.rays[k])
            << "\"";
        for (int i = 0; i < 4; ++i) out << ',' << s.slice_points[k][i].get_str();
        out << ',' << s.distances[k].get_str() << '\n';
      }
    return kOk;
  }
  nlohmann::json j;
  for (const auto& s : cert.sequences) {
    nlohmann::json seq;
    seq["seed"] = to_string(s.seed);
    seq["coefficient"] = s.coefficient.get_str();
    seq["on_quadric"] = s.on_quadric;
    seq["distances_decreasing"] = s.decreasing;
    for (std::size_t k = 0; k < s.rays.size(); ++k)
      seq["points"].push_back({{"ray", to_string(s.rays[k])},
                               {"slice", to_string(s.slice_points[k])},
                               {"distance2", s.distances[k].get_str()}});
    j["sequences"].push_back(seq);
  }
  j["distinct_coefficients"] = cert.distinct_coefficients;
  j["iterated"] = {{"ray", to_string(it.ray)},
                   {"quadric", it.quadric ? it.quadric->get_str() : "undefined"},
                   {"flop_check", it.check.agrees}};
  if (fmt == Format::Json) {
    out << j.dump(2) << '\n';
  } else {
    for (const auto& s : cert.sequences) {
      out << "seed " << to_string(s.seed) << "  5Q + " << s.coefficient.get_str() << " Gamma^2 = 0"
          << (s.on_quadric ? "" : "  (VIOLATED)") << '\n';
      for (std::size_t k = 0; k < s.rays.size(); ++k)
        out << "  " << to_string(s.rays[k]) << "  |p-A|^2 = " << s.distances[k].get_str() << '\n';
    }
    out << "coefficients distinct: " << (cert.distinct_coefficients ? "yes" : "no") << '\n';
    out << "iterated: " << to_string(it.ray) << "  quadric " << (it.quadric ? it.quadric->get_str() : "undefined")
        << '\n';
  }
  bool ok = cert.distinct_coefficients;
  for (const auto& s : cert.sequences) ok = ok && s.on_quadric && s.decreasing;
  return ok ? kOk : kFailed;
}

int cmd_funddom(bool json, std::ostream& out) {
  auto d = build_domain();
  auto rep = verify_convexity(d);
  if (json) {
    nlohmann::json j;
    for (int i = 0; i < 7; ++i) j["vertices"][std::string(1, FundamentalDomain::names[i])] = to_string(d.v[i]);
    for (const auto& n : rep.normals) j["normals"].push_back(to_string(n));
    for (const auto& c : rep.checks)
      j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"informational", c.informational}});
    j["pass"] = rep.all_pass();
    out << j.dump(2) << '\n';
  } else {
    for (int i = 0; i < 7; ++i) out << 'v' << FundamentalDomain::names[i] << " = " << to_string(d.v[i]) << '\n';
    for (const auto& c : rep.checks)
      out << (c.pass ? "ok   " : (c.informational ? "note " : "FAIL ")) << c.name << "  " << c.detail << '\n';
  }
  return rep.all_pass() ? kOk : kFailed;
}

int cmd_plot(const std::string& figure, const std::string& path, int n) {
  Format f = format_from_path(path);
  std::string body;
  if (figure == "tiling") body = plot::tiling(f);
  else if (figure == "cubocta") body = plot::cubocta(f);
  else if (figure == "dotplot") body = plot::dotplot(f, static_cast<std::size_t>(n));
  else throw ParseError("unknown figure '" + figure + "'");
  write_file(path, body);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Movable fan explorer"};
  app.require_subcommand(1);

  bool json = false;
  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  verify->add_flag("--json", json, "print the JSON report");

  int depth = 3;
  std::string store_path, window = "1/2";
  bool resume = false;
  std::optional<unsigned> seed;
  auto* explore_cmd = app.add_subcommand("explore", "breadth-first exploration of the fan");
  explore_cmd->add_option("--depth", depth, "number of wall crossings")->check(CLI::NonNegativeNumber);
  explore_cmd->add_option("--store", store_path, "JSON-lines store file")->required();
  explore_cmd->add_flag("--resume", resume, "continue from the existing store");
  explore_cmd->add_option("--window", window, "tiling squares with |p|,|q| <= window");
  explore_cmd->add_option("--seed", seed, "shuffle the traversal order");

  std::string literal, locate_store;
  auto* locate_cmd = app.add_subcommand("locate", "find the model whose cone contains a divisor");
  locate_cmd->add_option("--divisor", literal, "literal like \"(a/b, c, d, e)\"")->required();
  locate_cmd->add_option("--store", locate_store, "store to read and extend");
  locate_cmd->add_flag("--json", json);

  int n = 6;
  std::string emit = "text";
  auto* boundary_cmd = app.add_subcommand("boundary", "boundary rays and the two quadrics");
  boundary_cmd->add_option("--n", n, "points per sequence")->check(CLI::Range(2, 100000));
  boundary_cmd->add_option("--emit", emit, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* funddom_cmd = app.add_subcommand("funddom", "verify the fundamental domain");
  funddom_cmd->add_flag("--json", json);

  std::string figure, out_path;
  int points = 200;
  auto* plot_cmd = app.add_subcommand("plot", "write a figure");
  plot_cmd->add_option("figure", figure, "cubocta, tiling or dotplot")
      ->required()
      ->check(CLI::IsMember({"cubocta", "tiling", "dotplot"}));
  plot_cmd->add_option("--out", out_path, "output file (.svg, .csv or .json)")->required();
  plot_cmd->add_option("--n", points, "rays in the dot plot")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(json, out);
    if (*explore_cmd) return cmd_explore(depth, store_path, resume, window, seed, out);
    if (*locate_cmd) return cmd_locate(literal, locate_store, json, out);
    if (*boundary_cmd) return cmd_boundary(n, format_from_string(emit), out);
    if (*funddom_cmd) return cmd_funddom(json, out);
    if (*plot_cmd) return cmd_plot(figure, out_path, points);
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace hmfan::cli
