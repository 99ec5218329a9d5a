#include "cli/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "elliptic_oam/beams.hpp"
#include "elliptic_oam/error.hpp"
#include "elliptic_oam/ince.hpp"
#include "elliptic_oam/kernels.hpp"
#include "elliptic_oam/oam.hpp"
#include "elliptic_oam/vortex.hpp"

namespace elliptic_oam::cli {

using json = nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::numerical_failure, "sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

namespace {

struct Sink {
  std::string path = "-";
};

class Emitter {
 public:
  Emitter(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  // Writes payload to path (or stdout for "-") and its manifest next to it
  // (or to stderr).
  void emit(const std::string& path, const std::string& payload, const std::string& subcommand,
            const json& parameters) {
    json manifest;
    manifest["subcommand"] = subcommand;
    manifest["parameters"] = parameters;
    manifest["tool_version"] = ELLIPTIC_OAM_VERSION;
    manifest["simd_backend"] = std::string(kernels::to_string(kernels::active_backend()));
    manifest["checksum"] = sha256_hex(payload);
    const std::string manifest_text = manifest.dump(2) + "\n";
    if (path == "-") {
      out_ << payload;
      out_.flush();
      err_ << manifest_text;
      return;
    }
    write_file(path, payload);
    write_file(path + ".manifest.json", manifest_text);
  }

 private:
  static void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::invalid_argument, "cannot open " + path + " for writing");
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file) throw Error(ErrorCode::invalid_argument, "write failed for " + path);
  }

  std::ostream& out_;
  std::ostream& err_;
};

BeamGeometry make_geometry(double waist, double wavenumber, double z) {
  BeamGeometry g;
  g.waist = waist;
  g.wavenumber = wavenumber;
  g.z = z;
  g.validate();
  return g;
}

void require_positive_epsilon(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::invalid_argument, "epsilon must be > 0");
  }
}

std::string solve_ince_doc(int p, int m, Parity parity, double eps) {
  const ModeIndex mode = make_mode(p, m, parity);
  const IncePolynomial poly = solve_ince(mode, eps);
  json doc;
  doc["p"] = p;
  doc["m"] = m;
  doc["parity"] = std::string(to_string(parity));
  doc["epsilon"] = eps;
  doc["eigenvalue"] = poly.eigenvalue;
  doc["fourier"] = poly.fourier;
  json harmonics = json::array();
  for (std::size_t r = 0; r < poly.fourier.size(); ++r) harmonics.push_back(poly.harmonic(r));
  doc["harmonics"] = harmonics;
  doc["residual"] = ince_ode_residual(poly);
  return doc.dump(2) + "\n";
}

std::string decompose_doc(int p, int m, Parity parity, double eps) {
  const Decomposition dec = decompose(make_mode(p, m, parity), eps);
  json terms = json::array();
  for (auto it = dec.terms.rbegin(); it != dec.terms.rend(); ++it) {
    terms.push_back({{"n", it->index.n}, {"l", it->index.l}, {"D", it->weight}});
  }
  json doc;
  doc["p"] = p;
  doc["m"] = m;
  doc["parity"] = std::string(to_string(parity));
  doc["epsilon"] = eps;
  doc["terms"] = terms;
  doc["sum_sq"] = dec.sum_sq();
  return doc.dump(2) + "\n";
}

std::string curve_csv(const OamCurve& curve) {
  std::string text = "epsilon,oam\n";
  for (const OamSample& s : curve.samples) {
    text += format_double(s.epsilon);
    text += ',';
    text += format_double(s.oam);
    text += '\n';
  }
  return text;
}

std::string field_csv(const ComplexField& field) {
  std::string text = "x,y,re,im\n";
  for (int j = 0; j < field.ny; ++j) {
    for (int i = 0; i < field.nx; ++i) {
      const auto& v = field.at(i, j);
      text += format_double(field.x(i));
      text += ',';
      text += format_double(field.y(j));
      text += ',';
      text += format_double(v.real());
      text += ',';
      text += format_double(v.imag());
      text += '\n';
    }
  }
  return text;
}

// 16-bit binary PGM of |field|^2 / peak, top row = largest y.
std::string field_pgm(const ComplexField& field) {
  double peak = 0.0;
  for (const auto& v : field.values) peak = std::max(peak, std::norm(v));
  std::string text = "P5\n" + std::to_string(field.nx) + " " + std::to_string(field.ny) + "\n65535\n";
  text.reserve(text.size() + 2 * field.values.size());
  for (int j = field.ny - 1; j >= 0; --j) {
    for (int i = 0; i < field.nx; ++i) {
      const double level = peak > 0.0 ? std::norm(field.at(i, j)) / peak : 0.0;
      const auto q = static_cast<unsigned>(std::lround(std::clamp(level, 0.0, 1.0) * 65535.0));
      text.push_back(static_cast<char>(q >> 8));
      text.push_back(static_cast<char>(q & 0xff));
    }
  }
  return text;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_mode:
    case ErrorCode::grid_mismatch:
      return kUsageError;
    case ErrorCode::non_symmetrizable:
    case ErrorCode::numerical_failure:
    case ErrorCode::unnormalized_state:
      return kNumericalFailure;
  }
  return kNumericalFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks) {
  CLI::App app{"Ince-Gauss modes, LG decompositions and photon OAM", "elliptic-oam"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ELLIPTIC_OAM_VERSION));
  bool seedless = true;
  app.add_flag("--seedless", seedless, "No randomness anywhere (default and only mode)");

  Emitter emitter(out, err);
  int status = kSuccess;
  std::function<void()> action;

  auto add_out = [](CLI::App* sub, std::string& path) {
    sub->add_option("-o,--out", path, "Output file, - for stdout")->capture_default_str();
  };

  int p = 0;
  int m = 0;
  std::string parity_text = "even";
  double eps = 1.0;
  std::string path = "-";

  auto* solve = app.add_subcommand("solve-ince", "Ince polynomial coefficients and eigenvalue");
  solve->add_option("-p", p, "Order")->required();
  solve->add_option("-m", m, "Degree")->required();
  solve->add_option("--parity", parity_text, "even | odd")->capture_default_str();
  solve->add_option("-e,--epsilon", eps, "Ellipticity")->required();
  add_out(solve, path);
  solve->callback([&] {
    action = [&] {
      const Parity parity = parse_parity(parity_text);
      emitter.emit(path, solve_ince_doc(p, m, parity, eps), "solve-ince",
                   {{"p", p}, {"m", m}, {"parity", parity_text}, {"epsilon", eps}});
    };
  });

  auto* dec = app.add_subcommand("decompose", "Laguerre-Gauss weights of an IG mode");
  dec->add_option("-p", p, "Order")->required();
  dec->add_option("-m", m, "Degree")->required();
  dec->add_option("--parity", parity_text, "even | odd")->capture_default_str();
  dec->add_option("-e,--epsilon", eps, "Ellipticity")->required();
  add_out(dec, path);
  dec->callback([&] {
    action = [&] {
      const Parity parity = parse_parity(parity_text);
      emitter.emit(path, decompose_doc(p, m, parity, eps), "decompose",
                   {{"p", p}, {"m", m}, {"parity", parity_text}, {"epsilon", eps}});
    };
  });

  std::string sign_text = "plus";
  double eps_min = 1e-4;
  double eps_max = 30.0;
  int steps = 512;
  bool log_spacing = false;
  std::vector<int> cross;
  std::string sidecar_path;
  auto* curve = app.add_subcommand("oam-curve", "<Lz> of a helical IG photon against ellipticity");
  curve->add_option("-p", p, "Order")->required();
  curve->add_option("-m", m, "Degree")->required();
  curve->add_option("--sign", sign_text, "plus | minus")->capture_default_str();
  curve->add_option("--eps-min", eps_min)->capture_default_str();
  curve->add_option("--eps-max", eps_max)->capture_default_str();
  curve->add_option("--steps", steps)->capture_default_str();
  curve->add_flag("--log-spacing", log_spacing, "Logarithmic epsilon grid");
  curve->add_option("--cross", cross, "Second curve p2 m2 to intersect")->expected(2);
  curve->add_option("--sidecar", sidecar_path,
                    "Turning-point/crossing JSON (default <out>.sidecar.json)");
  add_out(curve, path);
  curve->callback([&] {
    action = [&] {
      if (!(eps_min > 0.0)) throw Error(ErrorCode::invalid_argument, "--eps-min must be > 0");
      if (!(eps_max > eps_min)) throw Error(ErrorCode::invalid_argument, "--eps-max must exceed --eps-min");
      if (steps < 2) throw Error(ErrorCode::invalid_argument, "--steps must be >= 2");
      if (m < 1) throw Error(ErrorCode::invalid_mode, "helical modes need m >= 1");
      const Helicity sign = parse_helicity(sign_text);
      make_mode(p, m, Parity::odd);
      const std::vector<double> grid =
          log_spacing ? log_grid(eps_min, eps_max, steps) : linear_grid(eps_min, eps_max, steps);
      const OamCurve c = oam_curve(p, m, sign, grid);

      json params = {{"p", p},           {"m", m},         {"sign", sign_text},
                     {"eps_min", eps_min}, {"eps_max", eps_max}, {"steps", steps},
                     {"log_spacing", log_spacing}};
      json side;
      json turning = json::array();
      for (const TurningPoint& t : find_turning_points(c)) {
        turning.push_back({{"epsilon", t.epsilon},
                           {"oam", t.oam},
                           {"kind", t.is_minimum ? "minimum" : "maximum"}});
      }
      side["turning_points"] = turning;
      if (!cross.empty()) {
        if (cross[1] < 1) throw Error(ErrorCode::invalid_mode, "--cross needs m2 >= 1");
        make_mode(cross[0], cross[1], Parity::odd);
        const OamCurve other = oam_curve(cross[0], cross[1], sign, grid);
        side["crossings"] = {{"p2", cross[0]}, {"m2", cross[1]}, {"epsilon", find_crossings(c, other)}};
        params["cross"] = cross;
      }
      emitter.emit(path, curve_csv(c), "oam-curve", params);
      std::string side_path = sidecar_path;
      if (side_path.empty() && path != "-") side_path = path + ".sidecar.json";
      if (!side_path.empty()) emitter.emit(side_path, side.dump(2) + "\n", "oam-curve", params);
    };
  });

  std::string kind_text = "even";
  double window = 3.0;
  int resolution = 256;
  double z = 0.0;
  double waist = 1.0;
  double wavenumber = 2.0 * std::numbers::pi;
  std::string format = "csv";
  auto* field = app.add_subcommand("field", "Sample a transverse field on a square grid");
  field->add_option("-p", p, "Order")->required();
  field->add_option("-m", m, "Degree")->required();
  field->add_option("--kind", kind_text, "even | odd | helical_plus | helical_minus")
      ->capture_default_str();
  field->add_option("-e,--epsilon", eps, "Ellipticity")->required();
  field->add_option("--window", window, "Half width of the window")->capture_default_str();
  field->add_option("--resolution", resolution, "Samples per axis")->capture_default_str();
  field->add_option("--z", z, "Propagation distance")->capture_default_str();
  field->add_option("--waist", waist)->capture_default_str();
  field->add_option("--wavenumber", wavenumber)->capture_default_str();
  field->add_option("--format", format, "csv | pgm")->capture_default_str();
  add_out(field, path);
  field->callback([&] {
    action = [&] {
      if (format != "csv" && format != "pgm") {
        throw Error(ErrorCode::invalid_argument, "--format must be csv or pgm");
      }
      if (!(window > 0.0)) throw Error(ErrorCode::invalid_argument, "--window must be > 0");
      require_positive_epsilon(eps);
      const BeamGeometry geometry = make_geometry(waist, wavenumber, z);
      const LgKind kind = parse_lg_kind(kind_text);
      BatchField batch;
      if (kind == LgKind::even || kind == LgKind::odd) {
        auto beam = std::make_shared<IgBeam>(
            make_mode(p, m, kind == LgKind::even ? Parity::even : Parity::odd), eps, geometry);
        batch = [beam](auto x, auto y, auto o) { beam->evaluate(x, y, o); };
      } else {
        const Helicity sign = kind == LgKind::helical_plus ? Helicity::plus : Helicity::minus;
        auto beam = std::make_shared<HigBeam>(p, m, sign, eps, geometry);
        batch = [beam](auto x, auto y, auto o) { beam->evaluate(x, y, o); };
      }
      const ComplexField sampled = sample_grid(batch, window, resolution);
      emitter.emit(path, format == "csv" ? field_csv(sampled) : field_pgm(sampled), "field",
                   {{"p", p},
                    {"m", m},
                    {"kind", kind_text},
                    {"epsilon", eps},
                    {"window", window},
                    {"resolution", resolution},
                    {"z", z},
                    {"waist", waist},
                    {"wavenumber", wavenumber},
                    {"format", format}});
    };
  });

  double floor = kDefaultAmplitudeFloor;
  int vortex_resolution = 512;
  auto* vort = app.add_subcommand("vortices", "Phase singularities of a helical IG field");
  vort->add_option("-p", p, "Order")->required();
  vort->add_option("-m", m, "Degree")->required();
  vort->add_option("--sign", sign_text, "plus | minus")->capture_default_str();
  vort->add_option("-e,--epsilon", eps, "Ellipticity")->required();
  vort->add_option("--resolution", vortex_resolution, "Samples per axis")->capture_default_str();
  vort->add_option("--floor", floor, "Relative amplitude floor")->capture_default_str();
  vort->add_option("--waist", waist)->capture_default_str();
  vort->add_option("--wavenumber", wavenumber)->capture_default_str();
  add_out(vort, path);
  vort->callback([&] {
    action = [&] {
      require_positive_epsilon(eps);
      if (m < 1) throw Error(ErrorCode::invalid_mode, "helical modes need m >= 1");
      const Helicity sign = parse_helicity(sign_text);
      const BeamGeometry geometry = make_geometry(waist, wavenumber, 0.0);
      const auto census = vortex_census(p, m, sign, std::span<const double>(&eps, 1),
                                        vortex_resolution, geometry, floor);
      const CensusEntry& entry = census.front();
      json list = json::array();
      int total = 0;
      for (const Vortex& v : entry.vortices) {
        list.push_back({{"x", v.x}, {"y", v.y}, {"charge", v.charge}});
        total += v.charge;
      }
      json doc;
      doc["p"] = p;
      doc["m"] = m;
      doc["sign"] = sign_text;
      doc["epsilon"] = eps;
      doc["resolution"] = vortex_resolution;
      doc["window_half_width"] = entry.window_half_width;
      doc["spacing"] = entry.spacing;
      doc["foci"] = json::array({json::array({-entry.semifocal, 0.0}),
                                 json::array({entry.semifocal, 0.0})});
      doc["vortices"] = list;
      doc["total_charge"] = total;
      emitter.emit(path, doc.dump(2) + "\n", "vortices",
                   {{"p", p},
                    {"m", m},
                    {"sign", sign_text},
                    {"epsilon", eps},
                    {"resolution", vortex_resolution},
                    {"floor", floor},
                    {"waist", waist},
                    {"wavenumber", wavenumber}});
    };
  });

  std::string level_text = "fast";
  auto* verify = app.add_subcommand("verify", "Run the built-in oracle suites");
  verify->add_option("--level", level_text, "fast | full")->capture_default_str();
  add_out(verify, path);
  verify->callback([&] {
    action = [&] {
      if (level_text != "fast" && level_text != "full") {
        throw Error(ErrorCode::invalid_argument, "--level must be fast or full");
      }
      VerifyOptions options;
      options.level = level_text == "full" ? VerifyLevel::full : VerifyLevel::fast;
      options.decomposer = hooks.decomposer;
      const VerifyReport report = run_verification(options);
      emitter.emit(path, report.to_text(), "verify", {{"level", level_text}});
      if (!report.passed()) status = kVerificationFailed;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << ELLIPTIC_OAM_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return status;
}

}  // namespace elliptic_oam::cli
