// Command-line front end. Talks to the library through the C interface only.
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "casimir/casimir_c.h"

namespace {

// Exit codes.
constexpr int kUsage = 1, kConfig = 2, kConvergence = 3, kIngestion = 4, kSelftestFailed = 5, kInternal = 6;

struct Failure {
  int code;
  std::string msg;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw Failure{code, msg}; }

int exit_code(casimir_status s) {
  switch (s) {
    case CASIMIR_E_USAGE: return kUsage;
    case CASIMIR_E_CONFIG:
    case CASIMIR_E_DOMAIN: return kConfig;
    case CASIMIR_E_CONVERGENCE: return kConvergence;
    case CASIMIR_E_INGESTION: return kIngestion;
    default: return kInternal;
  }
}

struct Ctx {
  casimir_context* p = nullptr;
  Ctx() {
    if (casimir_context_new(&p) != CASIMIR_OK) fail(kInternal, "cannot create context");
  }
  ~Ctx() { casimir_context_free(p); }
  Ctx(const Ctx&) = delete;
  Ctx& operator=(const Ctx&) = delete;
  void check(casimir_status s) const {
    if (s != CASIMIR_OK) fail(exit_code(s), casimir_last_error(p));
    const char* w = casimir_last_warnings(p);
    if (w && *w) std::fprintf(stderr, "warning: %s\n", w);
  }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Free(p);
  }
};
using Material = Handle<casimir_material, casimir_material_free>;
using Stack = Handle<casimir_stack, casimir_stack_free>;
using Roughness = Handle<casimir_roughness, casimir_roughness_free>;
using Preset = Handle<casimir_preset, casimir_preset_free>;

// ---- value parsing

double parse_number(const std::string& s, std::string& unit) {
  const char* b = s.c_str();
  char* e = nullptr;
  double v = std::strtod(b, &e);
  if (e == b) fail(kUsage, "not a number: '" + s + "'");
  unit = e;
  return v;
}

double with_unit(const std::string& s, const std::map<std::string, double>& units, const std::string& what) {
  std::string u;
  double v = parse_number(s, u);
  auto it = units.find(u);
  if (it == units.end()) fail(kUsage, "bad unit '" + u + "' in " + what + " '" + s + "'");
  return v * it->second;
}

double length(const std::string& s) {
  static const std::map<std::string, double> u{{"", 1}, {"m", 1}, {"cm", 1e-2}, {"mm", 1e-3},
                                               {"um", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12}};
  return with_unit(s, u, "length");
}
double area(const std::string& s) {
  static const std::map<std::string, double> u{{"", 1}, {"m2", 1}, {"cm2", 1e-4}, {"mm2", 1e-6}, {"um2", 1e-12}};
  return with_unit(s, u, "area");
}
double energy_ev(const std::string& s) {
  static const std::map<std::string, double> u{{"", 1}, {"eV", 1}, {"meV", 1e-3}};
  return with_unit(s, u, "energy");
}
double plain(const std::string& s) {
  std::string u;
  double v = parse_number(s, u);
  if (!u.empty()) fail(kUsage, "unexpected characters in '" + s + "'");
  return v;
}

// kind:key=value,key=value
struct Spec {
  std::string kind;
  std::map<std::string, std::string> kv;
  std::string text;

  const std::string& need(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end()) fail(kUsage, "'" + text + "' needs " + k + "=");
    return it->second;
  }
  std::optional<std::string> get(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  }
  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const char* a : keys) ok = ok || k == a;
      if (!ok) fail(kUsage, "unknown key '" + k + "' in '" + text + "'");
    }
  }
};

Spec parse_spec(const std::string& s) {
  Spec out;
  out.text = s;
  auto colon = s.find(':');
  out.kind = s.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::stringstream ss(s.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) fail(kUsage, "expected key=value in '" + s + "'");
    out.kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

struct Range {
  double start, stop;
  int count;
};
Range parse_range(const std::string& s, double (*conv)(const std::string&)) {
  auto p1 = s.find(':'), p2 = s.rfind(':');
  if (p1 == std::string::npos || p1 == p2) fail(kUsage, "expected start:stop:count, got '" + s + "'");
  Range r{conv(s.substr(0, p1)), conv(s.substr(p1 + 1, p2 - p1 - 1)), 0};
  double n = plain(s.substr(p2 + 1));
  if (n < 1 || n != std::floor(n)) fail(kUsage, "count must be a positive integer in '" + s + "'");
  r.count = int(n);
  if (!(r.start > 0) || !(r.stop >= r.start)) fail(kUsage, "need 0 < start <= stop in '" + s + "'");
  return r;
}
std::vector<double> expand(const Range& r, bool linear) {
  std::vector<double> v(r.count);
  for (int i = 0; i < r.count; ++i) {
    double f = r.count == 1 ? 0.0 : double(i) / (r.count - 1);
    v[i] = linear ? r.start + f * (r.stop - r.start) : r.start * std::pow(r.stop / r.start, f);
  }
  v.back() = r.stop;
  return v;
}

std::string data_path(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  if (const char* dir = std::getenv("CASIMIR_DATA_DIR")) {
    fs::path p = fs::path(dir) / name;
    if (fs::exists(p)) return p.string();
  }
  fail(kIngestion, "file not found: " + name + " (also looked in CASIMIR_DATA_DIR)");
}

// ---- materials

bool make_material(const Ctx& ctx, const Spec& s, Material& m) {
  if (s.kind == "ideal") {
    s.allow({});
    ctx.check(casimir_material_ideal(ctx.p, &m.p));
    return true;
  }
  if (s.kind == "au" || s.kind == "gold") {
    ctx.check(casimir_material_drude(ctx.p, 9.0, 0.035, &m.p));
    return false;
  }
  if (s.kind == "al" || s.kind == "aluminium" || s.kind == "aluminum") {
    ctx.check(casimir_material_drude(ctx.p, 12.5, 0.063, &m.p));
    return false;
  }
  if (s.kind == "plasma") {
    ctx.check(casimir_material_plasma(ctx.p, energy_ev(s.need("wp")), &m.p));
  } else if (s.kind == "drude") {
    ctx.check(casimir_material_drude(ctx.p, energy_ev(s.need("wp")), energy_ev(s.need("gamma")), &m.p));
  } else if (s.kind == "constant") {
    ctx.check(casimir_material_constant(ctx.p, plain(s.need("eps")), &m.p));
  } else if (s.kind == "oscillator") {
    ctx.check(casimir_material_oscillator(ctx.p, plain(s.need("eps0")), energy_ev(s.need("w0")), &m.p));
  } else if (s.kind == "table") {
    ctx.check(casimir_material_table(ctx.p, data_path(s.need("file")).c_str(), energy_ev(s.need("wp")),
                                     energy_ev(s.need("gamma")), &m.p));
  } else {
    fail(kUsage, "unknown material '" + s.kind + "'");
  }
  return false;
}

std::string describe(const Ctx& ctx, const casimir_material* m) {
  char buf[256];
  ctx.check(casimir_material_describe(ctx.p, m, buf, sizeof buf));
  return buf;
}

// ---- run configuration

enum class Geometry { plates, sphere_plate, box, shell };

struct Config {
  Geometry geometry = Geometry::sphere_plate;
  std::string geometry_text;
  double a = 0, R = 0, S = 0;
  bool has_area = false;
  double box[3] = {0, 0, 0};
  std::string region = "whole";
  double mu = 0;
  std::string material_text = "ideal", coating_text, roughness_file, corrugation_text, zero_mode;
  double T = 0, tilt = 0;
  bool has_tilt = false, unsafe = false;
};

Config geometry_from(const std::string& text, bool need_a) {
  Config c;
  c.geometry_text = text;
  Spec s = parse_spec(text);
  if (s.kind == "plates") {
    s.allow({"a", "S"});
    c.geometry = Geometry::plates;
    if (auto S = s.get("S")) {
      c.S = area(*S);
      c.has_area = true;
    } else {
      c.S = 1.0;
    }
  } else if (s.kind == "sphere-plate") {
    s.allow({"a", "R"});
    c.geometry = Geometry::sphere_plate;
    c.R = length(s.need("R"));
  } else if (s.kind == "box") {
    s.allow({"a1", "a2", "a3"});
    c.geometry = Geometry::box;
    c.box[0] = length(s.need("a1"));
    c.box[1] = length(s.need("a2"));
    c.box[2] = length(s.need("a3"));
    return c;
  } else if (s.kind == "sphere-shell") {
    s.allow({"R", "region", "mu"});
    c.geometry = Geometry::shell;
    c.R = length(s.need("R"));
    if (auto r = s.get("region")) c.region = *r;
    if (auto mu = s.get("mu")) c.mu = plain(*mu);
    return c;
  } else {
    fail(kUsage, "unknown geometry '" + s.kind + "' (plates, sphere-plate, box, sphere-shell)");
  }
  if (auto a = s.get("a"))
    c.a = length(*a);
  else if (need_a)
    fail(kUsage, "'" + text + "' needs a=");
  return c;
}

// Everything resolved into library handles.
struct Setup {
  const Config& cfg;
  Material mat, coat;
  Stack stack;
  Roughness rough;
  bool ideal = false;
  std::string policy;  // empty for ideal metals
  std::string material_desc, provenance, unit;
  std::vector<double> offsets, weights;
  std::string corrugation_dist = "uniform";
  double corr_A = 0, corr_L = 0;
  bool corrugated = false;

  Setup(const Ctx& ctx, const Config& c) : cfg(c) {
    if (cfg.geometry == Geometry::box || cfg.geometry == Geometry::shell) {
      if (cfg.material_text != "ideal" || !cfg.coating_text.empty() || !cfg.roughness_file.empty() ||
          !cfg.corrugation_text.empty() || cfg.has_tilt || cfg.T != 0)
        fail(kConfig, "box and sphere-shell geometries take no material, temperature or corrections");
      provenance = cfg.geometry == Geometry::box ? "zeta(epstein)" : "zeta(jost)";
      unit = "J";
      return;
    }
    ideal = make_material(ctx, parse_spec(cfg.material_text), mat);
    material_desc = describe(ctx, mat.p);
    if (!cfg.coating_text.empty()) {
      if (ideal) fail(kConfig, "a coating on an ideal metal has no effect");
      Spec cs = parse_spec(cfg.coating_text);
      double d = length(cs.need("d"));
      cs.kv.erase("d");
      if (make_material(ctx, cs, coat)) fail(kConfig, "an ideal-metal coating is not supported");
      ctx.check(casimir_stack_new(ctx.p, mat.p, coat.p, d, &stack.p));
      material_desc += " + " + describe(ctx, coat.p);
    } else {
      ctx.check(casimir_stack_new(ctx.p, mat.p, nullptr, 0, &stack.p));
    }
    provenance = ideal ? "ideal" : "lifshitz";
    if (cfg.T > 0) {
      if (ideal) {
        if (!cfg.zero_mode.empty() && cfg.zero_mode != "sdm")
          fail(kConfig, "ideal metals use the sdm zero-mode policy");
        provenance += "+thermal(sdm)";
      } else {
        std::string z = cfg.zero_mode;
        if (z == "drude") z = "drude-resummed";
        if (z.empty()) {
          char buf[64];
          ctx.check(casimir_default_policy(ctx.p, stack.p, buf, sizeof buf));
          z = buf;
        }
        if ((z == "te-zero" || z == "te-one") && !cfg.unsafe)
          fail(kConfig, "zero-mode policy " + z + " needs --unsafe-zero-mode");
        policy = z;
        provenance += "+thermal(" + z + ")";
      }
    } else if (!cfg.zero_mode.empty()) {
      fail(kConfig, "--zero-mode needs --temperature > 0");
    }
    if (!cfg.roughness_file.empty()) {
      ctx.check(casimir_roughness_load(ctx.p, data_path(cfg.roughness_file).c_str(), &rough.p));
      size_t n = 0;
      ctx.check(casimir_roughness_distances(ctx.p, rough.p, nullptr, nullptr, 0, &n));
      offsets.resize(n);
      weights.resize(n);
      ctx.check(casimir_roughness_distances(ctx.p, rough.p, offsets.data(), weights.data(), n, &n));
      provenance += "+roughness(levels)";
    }
    if (cfg.has_tilt) {
      if (cfg.geometry != Geometry::plates) fail(kConfig, "--tilt applies to plates only");
      provenance += "+tilt";
    }
    if (!cfg.corrugation_text.empty()) {
      if (cfg.geometry != Geometry::sphere_plate) fail(kConfig, "--corrugation applies to sphere-plate only");
      Spec cs = parse_spec("c:" + cfg.corrugation_text);
      cs.text = cfg.corrugation_text;
      cs.allow({"A", "L", "dist"});
      corr_A = length(cs.need("A"));
      corr_L = length(cs.need("L"));
      if (auto d = cs.get("dist")) corrugation_dist = *d;
      corrugated = true;
      provenance += "+corrugation(" + corrugation_dist + ")";
    }
    unit = cfg.geometry == Geometry::sphere_plate || cfg.has_area ? "N" : "N/m^2";
  }
};

double base_force(const Ctx& ctx, const Setup& s, double a) {
  const Config& c = s.cfg;
  double v = 0;
  int g = c.geometry == Geometry::plates ? 0 : 1;
  if (s.ideal) {
    if (c.T > 0)
      ctx.check(casimir_thermal_ideal(ctx.p, g, c.R, a, c.T, &v));
    else if (g == 0)
      ctx.check(casimir_plates_ideal(ctx.p, 1.0, a, &v));
    else
      ctx.check(casimir_sphere_plate_ideal(ctx.p, c.R, a, &v));
  } else if (c.T > 0) {
    ctx.check(casimir_thermal_lifshitz(ctx.p, s.stack.p, g, c.R, a, c.T, s.policy.c_str(), c.unsafe, &v, nullptr));
  } else if (g == 0) {
    ctx.check(casimir_lifshitz_plates(ctx.p, s.stack.p, a, &v, nullptr));
  } else {
    ctx.check(casimir_lifshitz_sphere_plate(ctx.p, s.stack.p, c.R, a, &v, nullptr));
  }
  return g == 0 ? v * c.S : v;
}

struct CorrugationUser {
  const Ctx* ctx;
  const Setup* s;
  std::optional<Failure> err;
};

double corrugation_cb(double a, void* user) {
  auto* u = static_cast<CorrugationUser*>(user);
  if (u->err) return NAN;
  try {
    return base_force(*u->ctx, *u->s, a);
  } catch (const Failure& f) {
    u->err = f;
    return NAN;
  }
}

struct Row {
  double a;
  double value;
  double ideal0;
};

Row evaluate(const Ctx& ctx, const Setup& s, double a) {
  const Config& c = s.cfg;
  if (c.geometry == Geometry::box) {
    double e = 0;
    ctx.check(casimir_box_energy(ctx.p, c.box[0], c.box[1], c.box[2], 0, &e));
    return {0, e, NAN};
  }
  if (c.geometry == Geometry::shell) {
    double e = 0;
    ctx.check(casimir_sphere_energy(ctx.p, c.region.c_str(), c.R, c.mu, &e, nullptr, nullptr));
    return {0, e, NAN};
  }
  auto one = [&](double x) {
    if (!s.corrugated) return base_force(ctx, s, x);
    CorrugationUser u{&ctx, &s, std::nullopt};
    double v = 0;
    ctx.check(casimir_corrugation_average(ctx.p, corrugation_cb, &u, x, s.corr_A, s.corr_L,
                                          s.corrugation_dist.c_str(), &v));
    if (u.err) throw *u.err;
    return v;
  };
  double F = 0;
  if (s.offsets.empty()) {
    F = one(a);
  } else {
    for (size_t i = 0; i < s.offsets.size(); ++i) F += s.weights[i] * one(a + s.offsets[i]);
  }
  if (c.has_tilt) {
    double f = 1;
    ctx.check(casimir_tilt_factor(ctx.p, c.tilt / a, &f));
    F *= f;
  }
  double F0 = 0;
  if (c.geometry == Geometry::plates)
    ctx.check(casimir_plates_ideal(ctx.p, c.S, a, &F0));
  else
    ctx.check(casimir_sphere_plate_ideal(ctx.p, c.R, a, &F0));
  return {a, F, F0};
}

// Runs f(i) for i in [0, n) on a pool of workers with one context each; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(size_t n, int threads, F&& f) {
  std::vector<T> out(n);
  std::vector<std::optional<Failure>> errs(n);
  std::atomic<size_t> next{0};
  auto work = [&] {
    Ctx ctx;
    for (size_t i; (i = next++) < n;) {
      try {
        out[i] = f(ctx, i);
      } catch (const Failure& e) {
        errs[i] = e;
      }
    }
  };
  int k = std::max(1, std::min<int>(threads, int(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < k; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) throw *e;
  return out;
}

std::string g6(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}
std::string g17(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}
std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

struct Output {
  std::string path, format = "csv";
  std::ostringstream buf;
  void flush() {
    if (path.empty() || path == "-") {
      std::fputs(buf.str().c_str(), stdout);
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << buf.str())) fail(kConfig, "cannot write " + path);
  }
};

void write_force_rows(Output& out, const Config& c, const Setup& s, const std::vector<Row>& rows) {
  if (out.format == "csv") {
    out.buf << "geometry,a_m,R_m,T_K,material,provenance,value,unit,ideal_T0,ratio\n";
    for (const auto& r : rows) {
      bool energy = c.geometry == Geometry::box || c.geometry == Geometry::shell;
      out.buf << quoted(c.geometry_text) << ',' << (energy ? "" : g6(r.a)) << ',' << (c.R > 0 ? g6(c.R) : "")
              << ',' << g6(c.T) << ',' << quoted(energy ? "" : s.material_desc) << ',' << s.provenance << ','
              << g6(r.value) << ',' << s.unit << ',' << (energy ? "" : g6(r.ideal0)) << ','
              << (energy ? "" : g6(r.value / r.ideal0)) << '\n';
    }
    return;
  }
  out.buf << "geometry = " << c.geometry_text << "\n";
  if (!s.material_desc.empty()) out.buf << "material = " << s.material_desc << "\n";
  out.buf << "temperature_K = " << g17(c.T) << "\nprovenance = " << s.provenance << "\nunit = " << s.unit << "\n";
  for (const auto& r : rows) {
    out.buf << "[point]\n";
    if (r.a > 0) out.buf << "a_m = " << g17(r.a) << "\n";
    out.buf << "value = " << g17(r.value) << "\n";
    if (std::isfinite(r.ideal0))
      out.buf << "ideal_T0 = " << g17(r.ideal0) << "\nratio = " << g17(r.value / r.ideal0) << "\n";
  }
}

void add_physics_options(CLI::App* sub, Config& c, std::string& geometry) {
  sub->add_option("--geometry", geometry,
                  "plates:a=1um[,S=1cm2] | sphere-plate:R=100um,a=1um | box:a1=,a2=,a3= | "
                  "sphere-shell:R=1m[,region=whole|interior|exterior][,mu=rad/s]")
      ->required();
  sub->add_option("--material", c.material_text,
                  "ideal | au | al | plasma:wp=9eV | drude:wp=9eV,gamma=0.035eV | constant:eps= | "
                  "oscillator:eps0=,w0= | table:file=,wp=,gamma=")
      ->capture_default_str();
  sub->add_option("--coating", c.coating_text, "coating material with thickness, e.g. table:file=au.csv,wp=9,gamma=0.035,d=20nm");
  sub->add_option("--temperature", c.T, "temperature in K")->check(CLI::NonNegativeNumber);
  sub->add_option("--roughness", c.roughness_file, "roughness profile file (height_nm,fraction rows)");
  sub->add_option("--tilt", c.tilt, "tilt amplitude alpha*L in m (plates)");
  sub->add_option("--corrugation", c.corrugation_text, "A=,L=[,dist=uniform|convex|tent|max] (sphere-plate)");
  sub->add_option("--zero-mode", c.zero_mode, "sdm | plasma | drude | drude-resummed | te-zero | te-one");
  sub->add_flag("--unsafe-zero-mode", c.unsafe, "allow the te-zero and te-one policies");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir and dispersion force calculator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", casimir_version());

  Config cfg;
  std::string geometry;
  Output out;
  int threads = 1;
  std::string separation;
  bool linear = false;
  auto common_out = [&](CLI::App* sub) {
    sub->add_option("--out", out.path, "output path, - for stdout")->capture_default_str();
    sub->add_option("--format", out.format, "csv | report")
        ->check(CLI::IsMember({"csv", "report"}))
        ->capture_default_str();
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  };

  auto* compute = app.add_subcommand("compute", "evaluate one configuration");
  add_physics_options(compute, cfg, geometry);
  common_out(compute);

  auto* scan = app.add_subcommand("scan", "evaluate over a range of separations");
  add_physics_options(scan, cfg, geometry);
  scan->add_option("--separation", separation, "start:stop:count, inclusive")->required();
  scan->add_flag("--linear", linear, "linear spacing instead of logarithmic");
  common_out(scan);

  std::vector<std::string> curves;
  std::vector<double> voltages;
  std::string radius = "100um", fit_material = "none", calibrated;
  double a0_guess = 0;
  auto* fit = app.add_subcommand("fit", "fit contact separation and systematics to force curves");
  fit->add_option("--curve", curves, "force-curve CSV (displacement_nm,signal); repeat per voltage")->required();
  fit->add_option("--voltage", voltages, "voltage V1 applied for each curve, in V")->required();
  fit->add_option("--radius", radius, "sphere radius")->capture_default_str();
  fit->add_option("--material", fit_material, "theory material as for compute, or none")->capture_default_str();
  fit->add_option("--a0", a0_guess, "starting contact separation in m");
  fit->add_option("--calibrated", calibrated, "write separation_nm,force_pN for the first curve");
  common_out(fit);

  std::string preset_name, lambda_text;
  auto* constrain = app.add_subcommand("constrain", "exclusion curve for Yukawa corrections to gravity");
  constrain->add_option("--preset", preset_name, "lamoreaux97 | afm-al98 | afm-au99 | path to a JSON preset")
      ->required();
  constrain->add_option("--lambda", lambda_text, "start:stop:count in m, log-spaced")->required();
  common_out(constrain);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Ctx ctx;
    if (*compute || *scan) {
      Config g = geometry_from(geometry, compute->parsed());
      g.material_text = cfg.material_text;
      g.coating_text = cfg.coating_text;
      g.T = cfg.T;
      g.roughness_file = cfg.roughness_file;
      g.tilt = cfg.tilt;
      g.has_tilt = compute->count("--tilt") + scan->count("--tilt") > 0;
      g.corrugation_text = cfg.corrugation_text;
      g.zero_mode = cfg.zero_mode;
      g.unsafe = cfg.unsafe;
      Setup s(ctx, g);
      std::vector<double> as;
      if (*scan) {
        if (g.geometry == Geometry::box || g.geometry == Geometry::shell)
          fail(kConfig, "scan needs a plates or sphere-plate geometry");
        if (g.a > 0) fail(kUsage, "give the separation through --separation only");
        as = expand(parse_range(separation, length), linear);
      } else {
        as = {g.a};
      }
      auto rows = parallel_map<Row>(as.size(), threads, [&](const Ctx& c, size_t i) { return evaluate(c, s, as[i]); });
      write_force_rows(out, g, s, rows);
      out.flush();
      return 0;
    }

    if (*fit) {
      if (curves.size() != voltages.size()) fail(kUsage, "give one --voltage per --curve");
      double R = length(radius);
      Material m;
      Stack st;
      if (fit_material != "none") {
        make_material(ctx, parse_spec(fit_material), m);
        ctx.check(casimir_stack_new(ctx.p, m.p, nullptr, 0, &st.p));
      }
      std::vector<std::string> paths;
      for (const auto& c : curves) paths.push_back(data_path(c));
      std::vector<const char*> cp;
      for (const auto& p : paths) cp.push_back(p.c_str());
      casimir_fit_result r{};
      ctx.check(casimir_fit_curves(ctx.p, cp.data(), voltages.data(), cp.size(), R, st.p, a0_guess, &r));
      if (!calibrated.empty())
        ctx.check(casimir_write_calibrated(ctx.p, cp[0], voltages[0], R, &r, calibrated.c_str()));
      if (out.format == "csv") {
        out.buf << "a0_nm,V2_mV,C_N_per_m,E_pN,sigma_a0_nm,sigma_V2_mV,sigma_C_N_per_m,sigma_E_pN,chi2_N2,samples,"
                   "iterations,theory\n";
        out.buf << g6(r.a0 * 1e9) << ',' << g6(r.V2 * 1e3) << ',' << g6(r.C) << ',' << g6(r.E * 1e12) << ','
                << g6(r.sigma[0] * 1e9) << ',' << g6(r.sigma[1] * 1e3) << ',' << g6(r.sigma[2]) << ','
                << g6(r.sigma[3] * 1e12) << ',' << g6(r.chi2) << ',' << r.samples << ',' << r.iterations << ','
                << quoted(fit_material) << '\n';
      } else {
        out.buf << "theory = " << fit_material << "\nradius_m = " << g17(R) << "\na0_m = " << g17(r.a0)
                << "\nsigma_a0_m = " << g17(r.sigma[0]) << "\nV2_V = " << g17(r.V2) << "\nsigma_V2_V = "
                << g17(r.sigma[1]) << "\nC_N_per_m = " << g17(r.C) << "\nsigma_C_N_per_m = " << g17(r.sigma[2])
                << "\nE_N = " << g17(r.E) << "\nsigma_E_N = " << g17(r.sigma[3]) << "\nchi2_N2 = " << g17(r.chi2)
                << "\nsamples = " << r.samples << "\niterations = " << r.iterations << "\n";
      }
      out.flush();
      return 0;
    }

    if (*constrain) {
      Range r = parse_range(lambda_text, length);
      auto lambdas = expand(r, false);
      bool is_file = preset_name.find('/') != std::string::npos || preset_name.ends_with(".json");
      std::string path = is_file ? data_path(preset_name) : std::string();
      struct Point {
        double alpha, a;
        int method;
      };
      auto pts = parallel_map<Point>(lambdas.size(), threads, [&](const Ctx& c, size_t i) {
        Preset p;
        c.check(is_file ? casimir_preset_load(c.p, path.c_str(), &p.p) : casimir_preset_get(c.p, preset_name.c_str(), &p.p));
        Point pt{};
        c.check(casimir_exclusion_point(c.p, p.p, lambdas[i], &pt.alpha, &pt.a, &pt.method));
        return pt;
      });
      const char* names[2] = {"single-distance", "two-distance"};
      if (out.format == "csv") {
        out.buf << "preset,lambda_m,alpha_bound,method,a_m\n";
        for (size_t i = 0; i < pts.size(); ++i)
          out.buf << quoted(preset_name) << ',' << g6(lambdas[i]) << ','
                  << (std::isinf(pts[i].alpha) ? std::string("inf") : g6(pts[i].alpha)) << ',' << names[pts[i].method]
                  << ',' << g6(pts[i].a) << '\n';
      } else {
        out.buf << "preset = " << preset_name << "\n";
        for (size_t i = 0; i < pts.size(); ++i)
          out.buf << "[point]\nlambda_m = " << g17(lambdas[i]) << "\nalpha_bound = " << g17(pts[i].alpha)
                  << "\nmethod = " << names[pts[i].method] << "\na_m = " << g17(pts[i].a) << "\n";
      }
      out.flush();
      return 0;
    }

    if (*selftest) {
      int failed = 0;
      ctx.check(casimir_selftest(
          ctx.p,
          [](int id, int pass, const char* line, void*) {
            std::printf("%s %2d %s\n", pass ? "PASS" : "FAIL", id, line);
            std::fflush(stdout);
          },
          nullptr, &failed));
      std::printf("%d of 12 rows failed\n", failed);
      return failed ? kSelftestFailed : 0;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.msg.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternal;
  }
  return 0;
}
