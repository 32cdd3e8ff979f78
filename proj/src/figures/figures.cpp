// SPDX-License-Identifier: Apache-2.0
#include "illspec/figures/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "illspec/io/serialize.hpp"
#include "illspec/util/errors.hpp"

namespace illspec {
namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

Curve spectrum_curve(const Spectrum& s, const std::string& label, const std::string& color) {
  Curve c;
  c.label = label;
  c.color = color;
  c.trusted_upto = s.trust_cutoff;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.values[i].is_zero()) break;
    c.index.push_back(static_cast<int>(i + 1));
    c.log10_sigma.push_back(log10(s.values[i]).to_double());
  }
  return c;
}

Curve bound_curve(const std::string& label, int n, const std::function<double(int)>& log10_value) {
  Curve c;
  c.label = label;
  c.dashed = true;
  c.color = "#555555";
  for (int i = 1; i <= n; ++i) {
    c.index.push_back(i);
    c.log10_sigma.push_back(log10_value(i));
  }
  c.trusted_upto = n;
  return c;
}

}  // namespace

Spectrum compute_spectrum(const std::string& op, Scheme scheme, int n, mpfr_prec_t p) {
  const CompositionSpec spec = CompositionSpec::from_short_name(op);
  switch (scheme) {
    case Scheme::LeftSection: return eigen_sym(left_gram(spec, n), p);
    case Scheme::RightMidpoint: return eigen_sym(right_gram(spec, n, resolution(p)), p);
    case Scheme::Galerkin: return eigen_sym(galerkin_gram(spec, n, Arithmetic::Float, p), p);
  }
  throw ValidationError("compute_spectrum: unknown scheme");
}

std::string curve_csv(const Curve& c) {
  std::string out = "index,log10_sigma\n";
  for (std::size_t k = 0; k < c.index.size(); ++k) {
    out += std::to_string(c.index[k]) + "," + io::fmt_g16(c.log10_sigma[k]) + "\n";
  }
  return out;
}

Curve curve_from_csv(const std::string& csv) {
  Curve c;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  if (line != "index,log10_sigma") throw ValidationError("curve csv: unexpected header '" + line + "'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("curve csv: malformed line '" + line + "'");
    c.index.push_back(std::stoi(line.substr(0, comma)));
    c.log10_sigma.push_back(std::stod(line.substr(comma + 1)));
  }
  c.trusted_upto = c.index.empty() ? 0 : c.index.back();
  return c;
}

std::string render_svg(const Panel& panel) {
  const double w = 640, h = 480, left = 70, right = 170, top = 40, bottom = 55;
  const double pw = w - left - right, ph = h - top - bottom;
  int imax = 1;
  double ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (const auto& c : panel.curves) {
    for (std::size_t k = 0; k < c.index.size(); ++k) {
      imax = std::max(imax, c.index[k]);
      if (c.dashed) continue;
      if (first) {
        ymin = ymax = c.log10_sigma[k];
        first = false;
      }
      ymin = std::min(ymin, c.log10_sigma[k]);
      ymax = std::max(ymax, c.log10_sigma[k]);
    }
  }
  ymin = std::floor(ymin) - 1.0;
  ymax = std::ceil(ymax) + 1.0;
  auto sx = [&](double i) { return left + (i - 0.5) / (imax + 0.0) * pw; };
  auto sy = [&](double y) { return top + (ymax - std::clamp(y, ymin, ymax)) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(panel.title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int span = static_cast<int>(ymax - ymin);
  const int ystep = std::max(1, span / 10);
  for (int y = static_cast<int>(ymin); y <= static_cast<int>(ymax); ++y) {
    if ((y - static_cast<int>(ymin)) % ystep != 0) continue;
    os << "<line x1=\"" << left - 4 << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << left << "\" y2=\"" << num(sy(y))
       << "\" stroke=\"black\"/>";
    os << "<text x=\"" << left - 8 << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">1e" << y << "</text>\n";
  }
  const int xstep = std::max(1, imax / 10);
  for (int i = xstep; i <= imax; i += xstep) {
    os << "<line x1=\"" << num(sx(i)) << "\" y1=\"" << top + ph << "\" x2=\"" << num(sx(i)) << "\" y2=\""
       << top + ph + 4 << "\" stroke=\"black\"/>";
    os << "<text x=\"" << num(sx(i)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << i
       << "</text>\n";
  }
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << h - 15 << "\" text-anchor=\"middle\">index i</text>\n";
  os << "<text x=\"18\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << num(top + ph / 2) << ")\">sigma_i (log scale)</text>\n";

  int legend_row = 0;
  for (const auto& c : panel.curves) {
    std::string pts;
    for (std::size_t k = 0; k < c.index.size(); ++k) {
      pts += (k ? " " : "") + num(sx(c.index[k])) + "," + num(sy(c.log10_sigma[k]));
    }
    os << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.2\""
       << (c.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    if (!c.dashed) {
      for (std::size_t k = 0; k < c.index.size(); ++k) {
        const bool filled = c.index[k] <= c.trusted_upto;
        os << "<circle cx=\"" << num(sx(c.index[k])) << "\" cy=\"" << num(sy(c.log10_sigma[k]))
           << "\" r=\"3\" stroke=\"" << c.color << "\" fill=\"" << (filled ? c.color : "white") << "\"/>\n";
      }
    }
    const double ly = top + 10 + 18 * legend_row++;
    os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << num(ly) << "\" x2=\"" << left + pw + 36 << "\" y2=\""
       << num(ly) << "\" stroke=\"" << c.color << "\"" << (c.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>";
    os << "<text x=\"" << left + pw + 42 << "\" y=\"" << num(ly + 4) << "\">" << escape(c.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

double tail_linearity_residual(const Spectrum& s, int k) {
  const int cut = std::min<int>(s.trust_cutoff, static_cast<int>(s.size()));
  if (k < 2 || cut < k) throw ValidationError("tail_linearity_residual: need at least k trusted values");
  std::vector<double> x, y;
  for (int i = cut - k + 1; i <= cut; ++i) {
    x.push_back(i);
    y.push_back(log10(s.sigma(i)).to_double());
  }
  double mx = 0, my = 0;
  for (int j = 0; j < k; ++j) {
    mx += x[j];
    my += y[j];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (int j = 0; j < k; ++j) {
    sxx += (x[j] - mx) * (x[j] - mx);
    sxy += (x[j] - mx) * (y[j] - my);
  }
  const double b = sxy / sxx, a = my - b * mx;
  double r = 0;
  for (int j = 0; j < k; ++j) r = std::max(r, std::abs(y[j] - (a + b * x[j])));
  return r;
}

FigureOutput render_figure(const FigureSpec& spec, const std::string& out_dir, const SpectrumProvider& provider) {
  if (spec.which != 1 && spec.which != 2) throw ValidationError("render_figure: which must be 1 or 2");
  if (spec.ns.empty()) throw ValidationError("render_figure: empty N list");
  const std::string dir = "fig" + std::to_string(spec.which);
  FigureOutput out;
  nlohmann::json inputs = nlohmann::json::array();
  std::vector<Panel> panels;

  auto add_csv = [&](const std::string& name, const Curve& c) {
    const std::string rel = dir + "/" + name + ".csv";
    const std::string text = curve_csv(c);
    io::write_file(out_dir + "/" + rel, text);
    out.files.push_back(rel);
    return curve_from_csv(text);
  };
  auto record = [&](const std::string& op, Scheme scheme, const Spectrum& s) {
    inputs.push_back({{"operator", op}, {"scheme", to_string(scheme)}, {"N", s.n}, {"trust_cutoff", s.trust_cutoff}});
  };

  const std::vector<std::string> ops = spec.which == 1 ? std::vector<std::string>{"HaJ", "DHa"}
                                                       : std::vector<std::string>{"DHa", "HaJ"};
  if (spec.which == 1) {
    for (const auto& op : ops) {
      for (Scheme scheme : {Scheme::LeftSection, Scheme::RightMidpoint}) {
        Panel panel{op + "_" + to_string(scheme), op + ", " + to_string(scheme) + " discretization", {}};
        std::size_t colour = 0;
        for (int n : spec.ns) {
          const Spectrum s = provider(op, scheme, n, spec.precision);
          record(op, scheme, s);
          Curve c = add_csv(op + "_" + to_string(scheme) + "_N" + std::to_string(n),
                            spectrum_curve(s, "N=" + std::to_string(n), ""));
          c.label = "N=" + std::to_string(n);
          c.color = kPalette[colour++ % 6];
          c.trusted_upto = s.trust_cutoff;
          panel.curves.push_back(std::move(c));
        }
        panels.push_back(std::move(panel));
      }
    }
  } else {
    const int n = spec.ns.back();
    for (const auto& op : ops) {
      Panel panel{op, op + ", N=" + std::to_string(n) + ", both discretizations", {}};
      std::size_t colour = 0;
      for (Scheme scheme : {Scheme::LeftSection, Scheme::RightMidpoint}) {
        const Spectrum s = provider(op, scheme, n, spec.precision);
        record(op, scheme, s);
        Curve c = add_csv(op + "_" + to_string(scheme) + "_N" + std::to_string(n), spectrum_curve(s, "", ""));
        c.label = to_string(scheme);
        c.color = kPalette[colour++ % 6];
        c.trusted_upto = s.trust_cutoff;
        panel.curves.push_back(std::move(c));
      }
      const double l10e = 1.0 / std::log(10.0);
      Curve upper = add_csv("bound_" + op + "_upper", bound_curve("", n, [](int i) { return -1.5 * std::log10(i); }));
      upper.label = "i^(-3/2)";
      upper.dashed = true;
      upper.color = "#555555";
      Curve lower;
      if (op == "HaJ") {
        lower = add_csv("bound_" + op + "_lower", bound_curve("", n, [l10e](int i) { return -1.6 * i * l10e; }));
        lower.label = "exp(-1.6 i)";
      } else {
        lower = add_csv("bound_" + op + "_lower",
                        bound_curve("", n, [l10e](int i) { return -2.0 * i * l10e - std::log10(i); }));
        lower.label = "exp(-2i)/i";
      }
      lower.dashed = true;
      lower.color = "#999999";
      panel.curves.push_back(std::move(upper));
      panel.curves.push_back(std::move(lower));
      panels.push_back(std::move(panel));
    }
  }

  for (const auto& p : panels) {
    const std::string rel = dir + "/panel_" + p.name + ".svg";
    io::write_file(out_dir + "/" + rel, render_svg(p));
    out.files.push_back(rel);
  }
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : out.files) {
    files.push_back({{"path", f}, {"sha256", io::sha256_hex(io::read_file(out_dir + "/" + f))}});
  }
  nlohmann::json style = {{"palette", std::vector<std::string>(std::begin(kPalette), std::end(kPalette))},
                          {"bound_upper_color", "#555555"},
                          {"bound_lower_color", "#999999"},
                          {"marker", "circle r=3; filled = trusted, hollow = below precision floor"}};
  out.manifest = {{"schema_version", 1},
                  {"figure", spec.which},
                  {"N", spec.ns},
                  {"precision", spec.precision},
                  {"guard_bits", kGuardBits},
                  {"inputs", inputs},
                  {"style", style},
                  {"files", files}};
  io::write_file(out_dir + "/" + dir + "/manifest.json", out.manifest.dump(2) + "\n");
  out.files.push_back(dir + "/manifest.json");
  return out;
}

}  // namespace illspec
