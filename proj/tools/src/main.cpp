// Batch front-end: parse a tuple definition, run one engine command, write
// JSON (and for plot, CSV + SVG) artifacts into the output directory.
//
// Exit codes: 0 success, 2 malformed config or flags, 3 engine error
// (no formula, refused variant, verification failure, ...), 4 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "specmat/arrangement.hpp"
#include "specmat/completion.hpp"
#include "specmat/parse.hpp"
#include "specmat/serialize.hpp"
#include "specmat/spectra.hpp"
#include "specmat/theorems.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace specmat;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + p.string());
  return ss.str();
}

void write_file(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open " + p.string() + " for writing");
  out << data;
  out.flush();
  if (!out) throw IoError("cannot write " + p.string());
}

Rational parse_rational_flag(const std::string& text, const std::string& flag) {
  auto q = parse_rational(text);
  if (!q) throw ParseError(flag + ": '" + text + "' is not a rational");
  return *q;
}

struct Window {
  Rational re_min{-2}, re_max{2}, im_min{-2}, im_max{2};
};

Window parse_window(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t c = text.find(',', start);
    parts.push_back(text.substr(start, c == std::string::npos ? std::string::npos : c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  if (parts.size() != 4)
    throw ParseError("--window wants re_min,re_max,im_min,im_max");
  Window w;
  w.re_min = parse_rational_flag(parts[0], "--window");
  w.re_max = parse_rational_flag(parts[1], "--window");
  w.im_min = parse_rational_flag(parts[2], "--window");
  w.im_max = parse_rational_flag(parts[3], "--window");
  if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max))
    throw ParseError("--window: empty window");
  return w;
}

json window_json(const Window& w) {
  return json::array({rational_to_string(w.re_min), rational_to_string(w.re_max),
                      rational_to_string(w.im_min), rational_to_string(w.im_max)});
}

/// Row r runs top to bottom (im_max down to im_min), column c left to right.
std::vector<std::vector<bool>> sample_grid(const RegionExpr& region, const Window& w,
                                           unsigned res) {
  RegionExpr flat = simplify(region);
  Rational re_step = (w.re_max - w.re_min) / Rational(res - 1);
  Rational im_step = (w.im_max - w.im_min) / Rational(res - 1);
  std::vector<std::vector<bool>> grid(res, std::vector<bool>(res));
  for (unsigned r = 0; r < res; ++r) {
    Rational im = w.im_max - Rational(r) * im_step;
    for (unsigned c = 0; c < res; ++c) {
      CQ z{w.re_min + Rational(c) * re_step, im};
      grid[r][c] = contains(flat, z);
    }
  }
  return grid;
}

std::string grid_csv(const std::vector<std::vector<bool>>& grid) {
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

/// One rect per horizontal run of member samples; 1 SVG unit per sample.
std::string grid_svg(const std::vector<std::vector<bool>>& grid, const std::string& title) {
  unsigned res = static_cast<unsigned>(grid.size());
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
         std::to_string(res) + " " + std::to_string(res) + "\">\n";
  out += "<title>" + title + "</title>\n";
  out += "<rect width=\"" + std::to_string(res) + "\" height=\"" + std::to_string(res) +
         "\" fill=\"#ffffff\"/>\n";
  for (unsigned r = 0; r < res; ++r) {
    unsigned c = 0;
    while (c < res) {
      if (!grid[r][c]) {
        ++c;
        continue;
      }
      unsigned start = c;
      while (c < res && grid[r][c]) ++c;
      out += "<rect x=\"" + std::to_string(start) + "\" y=\"" + std::to_string(r) +
             "\" width=\"" + std::to_string(c - start) + "\" height=\"1\" fill=\"#1f3b8c\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

json tuple_json(const DiagonalTuple& t) {
  json out = json::array();
  for (const auto& m : t.entries()) out.push_back(m.to_string());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact spectra of upper triangular operator matrix completions"};
  app.get_formatter()->column_width(28);

  std::string config_path;
  std::string command;
  std::string kind_text;
  std::string variant_text;
  std::string lambda_text;
  std::string window_text;
  unsigned resolution = 201;
  std::string out_dir = ".";

  app.add_option("--config", config_path, "tuple definition file (Dk = EXPR lines)")
      ->required();
  app.add_option("--command", command,
                 "spectrum | intersect | check-equality | hypothesis | complete | verify | plot")
      ->required();
  app.add_option("--kind", kind_text,
                 "spectrum kind (left, right, spectrum, left-essential, right-essential, "
                 "essential, left-weyl, right-weyl, weyl)")
      ->required();
  app.add_option("--variant", variant_text, "hypothesis variant (defaults per kind)");
  app.add_option("--lambda", lambda_text, "point a+bi (required for complete/verify)");
  app.add_option("--window", window_text, "plot window re_min,re_max,im_min,im_max (default -2,2,-2,2)");
  app.add_option("--resolution", resolution, "plot samples per axis (default 201)");
  app.add_option("--out", out_dir, "output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto kind = spectrum_kind_from_string(kind_text);
    if (!kind) throw ParseError("--kind: unknown spectrum kind '" + kind_text + "'");
    std::optional<VariantFlag> variant;
    if (!variant_text.empty()) {
      variant = variant_from_string(variant_text);
      if (!variant) throw ParseError("--variant: unknown variant '" + variant_text + "'");
    }
    std::optional<CQ> lambda;
    if (!lambda_text.empty()) {
      lambda = parse_complex(lambda_text);
      if (!lambda) throw ParseError("--lambda: '" + lambda_text + "' is not a complex rational");
    }
    Window window;
    if (!window_text.empty()) window = parse_window(window_text);
    if (resolution < 2) throw ParseError("--resolution: need at least 2 samples per axis");

    bool known = command == "spectrum" || command == "intersect" ||
                 command == "check-equality" || command == "hypothesis" ||
                 command == "complete" || command == "verify" || command == "plot";
    if (!known) throw ParseError("--command: unknown command '" + command + "'");
    if ((command == "complete" || command == "verify") && !lambda)
      throw ParseError("--lambda is required for " + command);

    DiagonalTuple tuple = parse_tuple_config(read_file(config_path));

    json report;
    report["command"] = command;
    report["tuple"] = tuple_json(tuple);
    report["kind"] = to_string(*kind);

    std::vector<std::vector<bool>> grid;
    if (command == "spectrum") {
      // single-operator spectrum of the first diagonal entry
      report["model"] = tuple.entry(0).to_string();
      report["result"] = json::parse(region_json(spectrum(tuple.entry(0), *kind)));
    } else {
      VariantFlag v = variant ? *variant : default_variant(*kind);
      report["variant"] = to_string(v);
      if (command == "intersect" || command == "plot") {
        TheoremReport rep = intersection_spectrum(tuple, *kind, v);
        report["report"] = json::parse(theorem_report_json(rep));
        if (command == "plot") {
          grid = sample_grid(rep.result, window, resolution);
          report["window"] = window_json(window);
          report["resolution"] = resolution;
          report["grid_csv"] = "grid.csv";
          report["plot_svg"] = "plot.svg";
        }
      } else if (command == "check-equality") {
        report["check"] = json::parse(check_report_json(union_equality_check(tuple, *kind)));
      } else if (command == "hypothesis") {
        report["region"] = json::parse(region_json(hypothesis_region(tuple, *kind, v)));
      } else {
        CompletionPlan plan = build_completion(tuple, *lambda, *kind, v);
        report["plan"] = json::parse(plan_json(tuple, plan, *lambda));
        if (command == "verify")
          report["verification"] =
              json::parse(verification_json(verify_plan(tuple, plan, *lambda)));
      }
    }

    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "report.json", report.dump(2) + "\n");
    if (command == "plot") {
      write_file(dir / "grid.csv", grid_csv(grid));
      write_file(dir / "plot.svg",
                 grid_svg(grid, to_string(*kind) + std::string(" intersection")));
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
