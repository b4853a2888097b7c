#include "zplane/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace zplane {

std::string format_number(double x, int digits) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  return std::strtod(format_number(x, digits).c_str(), nullptr);
}

void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& trajectories) {
  out << "branch_id,e_re,e_im,z_re,z_im\n";
  for (const auto& br : trajectories) {
    for (const auto& p : br.points) {
      out << br.branch_id << ',' << format_number(p.energy.real()) << ','
          << format_number(p.energy.imag()) << ',' << format_number(p.charge.real()) << ','
          << format_number(p.charge.imag()) << '\n';
    }
  }
}

void write_eigenvalue_csv(std::ostream& out, const std::vector<cplx>& values) {
  out << "z_re,z_im\n";
  for (const auto& z : values) out << format_number(z.real()) << ',' << format_number(z.imag()) << '\n';
}

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 40.0;
constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

} // namespace

void write_trajectory_svg(std::ostream& out, const std::vector<Trajectory>& trajectories,
                          const std::array<double, 4>& window) {
  const auto [re_min, re_max, im_min, im_max] = window;
  const double sx = (kWidth - 2 * kMargin) / (re_max - re_min);
  const double sy = (kHeight - 2 * kMargin) / (im_max - im_min);
  auto px = [&](double re) { return kMargin + (re - re_min) * sx; };
  auto py = [&](double im) { return kHeight - kMargin - (im - im_min) * sy; };
  auto inside = [&](cplx z) {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (im_min <= 0.0 && im_max >= 0.0) {
    const std::string y = coord(py(0.0));
    out << "<line x1=\"" << coord(kMargin) << "\" y1=\"" << y << "\" x2=\""
        << coord(kWidth - kMargin) << "\" y2=\"" << y
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const int first = static_cast<int>(std::ceil(re_min));
    const int last = static_cast<int>(std::floor(re_max));
    const int label_every = (last - first) > 20 ? 5 : 1;
    for (int k = first; k <= last; ++k) {
      const std::string x = coord(px(k));
      out << "<line x1=\"" << x << "\" y1=\"" << coord(py(0.0) - 4) << "\" x2=\"" << x
          << "\" y2=\"" << coord(py(0.0) + 4) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      if (k % label_every == 0) {
        out << "<text x=\"" << x << "\" y=\"" << coord(py(0.0) + 16)
            << "\" font-size=\"10\" text-anchor=\"middle\">" << k << "</text>\n";
      }
    }
  }
  out << "<text x=\"" << coord(kWidth - kMargin) << "\" y=\"" << coord(kMargin - 10)
      << "\" font-size=\"12\" text-anchor=\"end\">Re Z / Im Z</text>\n";

  for (const auto& br : trajectories) {
    const char* color = kPalette[static_cast<std::size_t>(br.branch_id) % kPalette.size()];
    std::vector<std::string> segment;
    auto flush = [&] {
      if (segment.size() >= 2) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < segment.size(); ++i) out << (i ? " " : "") << segment[i];
        out << "\"/>\n";
      } else if (segment.size() == 1) {
        const auto comma = segment[0].find(',');
        out << "<circle cx=\"" << segment[0].substr(0, comma) << "\" cy=\""
            << segment[0].substr(comma + 1) << "\" r=\"1.5\" fill=\"" << color << "\"/>\n";
      }
      segment.clear();
    };
    std::size_t next_break = 0;
    for (std::size_t i = 0; i < br.points.size(); ++i) {
      if (next_break < br.discontinuities.size() && br.discontinuities[next_break] == i) {
        flush();
        ++next_break;
      }
      const cplx z = br.points[i].charge;
      if (!inside(z)) {
        flush();
        continue;
      }
      segment.push_back(coord(px(z.real())) + "," + coord(py(z.imag())));
    }
    flush();
  }
  out << "</svg>\n";
}

nlohmann::json to_json(const Resonance& res) {
  constexpr int kDigits = 12;
  nlohmann::json j;
  j["z_target"] = round_significant(res.z_target, kDigits);
  j["l"] = res.l;
  j["e_r"] = round_significant(res.position(), kDigits);
  j["gamma"] = round_significant(res.width(), kDigits);
  j["converged"] = res.converged;
  if (res.stability) {
    const auto& s = *res.stability;
    auto grid = nlohmann::json::array();
    for (const auto& p : s.grid) {
      grid.push_back({{"lambda", round_significant(p.lambda, kDigits)},
                      {"theta", round_significant(p.theta, kDigits)},
                      {"n", p.n},
                      {"e_r", round_significant(p.energy.real(), kDigits)},
                      {"gamma", round_significant(-2.0 * p.energy.imag(), kDigits)},
                      {"converged", p.converged}});
    }
    j["stability"] = {{"max_deviation", round_significant(s.max_deviation, kDigits)},
                      {"plateau", s.plateau},
                      {"grid", grid}};
  } else {
    j["stability"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const std::vector<Resonance>& list) {
  auto arr = nlohmann::json::array();
  for (const auto& r : list) arr.push_back(to_json(r));
  return arr;
}

} // namespace zplane
