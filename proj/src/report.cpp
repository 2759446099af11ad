#include "pbo/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace pbo {

namespace {

constexpr std::array<const char*, 6> kColors{"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 50.0;

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axes {
  double x0, x1, y0, y1;
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

std::string polyline(const Axes& ax, const std::vector<double>& ys, const char* color, const char* dash) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << "<polyline fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"1.5\"";
  if (dash != nullptr) os << " stroke-dasharray=\"" << dash << "\"";
  os << " points=\"";
  for (std::size_t i = 0; i < ys.size(); ++i) os << ax.px(static_cast<double>(i + 1)) << ',' << ax.py(ys[i]) << ' ';
  os << "\"/>\n";
  return os.str();
}

std::string frame(const std::string& title, const Axes& ax, const std::string& ylabel) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title) << "</text>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
     << kHeight - kMargin << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
     << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\" font-size=\"12\">N</text>\n"
     << "<text x=\"12\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 12 " << kHeight / 2
     << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  os << std::setprecision(4);
  for (double y : {ax.y0, 0.5 * (ax.y0 + ax.y1), ax.y1}) {
    os << "<text x=\"" << kMargin - 4 << "\" y=\"" << ax.py(y) + 4 << "\" text-anchor=\"end\" font-size=\"10\">" << y
       << "</text>\n";
  }
  for (double x : {ax.x0, ax.x1}) {
    os << "<text x=\"" << ax.px(x) << "\" y=\"" << kHeight - kMargin + 14 << "\" text-anchor=\"middle\" font-size=\"10\">"
       << x << "</text>\n";
  }
  return os.str();
}

std::string legend(std::size_t slot, const std::string& label, const char* color) {
  std::ostringstream os;
  const double y = kMargin + 14.0 * static_cast<double>(slot);
  os << "<rect x=\"" << kWidth - kMargin - 110 << "\" y=\"" << y - 8 << "\" width=\"10\" height=\"10\" fill=\"" << color
     << "\"/>\n<text x=\"" << kWidth - kMargin - 95 << "\" y=\"" << y + 1 << "\" font-size=\"11\">" << xml_escape(label)
     << "</text>\n";
  return os.str();
}

}  // namespace

void write_trace_csv(std::ostream& os, const std::vector<RunRecord>& records, double f_star) {
  os << "problem,variant,trial,seed,N,f_best,accuracy\n";
  os << std::setprecision(17);
  for (const auto& r : records) {
    for (std::size_t N = 1; N <= r.trace.size(); ++N) {
      os << r.problem << ',' << r.variant << ',' << r.trial << ',' << r.seed << ',' << N << ',' << r.trace[N - 1] << ','
         << accuracy(r, f_star, static_cast<int>(N)) << '\n';
    }
  }
}

std::string format_n_acc(const std::optional<double>& v) {
  if (!v) return "n.r.";
  std::ostringstream os;
  if (*v == std::floor(*v)) {
    os << static_cast<long long>(*v);
  } else {
    os << std::fixed << std::setprecision(1) << *v;
  }
  return os.str();
}

std::string summaries_json(const std::vector<ProblemSummary>& summaries, double t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : summaries) {
    nlohmann::json j;
    j["problem"] = s.problem;
    j["variant"] = s.variant;
    j["trials"] = s.trials;
    j["threshold"] = t;
    j["median_n_acc"] = s.median_n_acc ? nlohmann::json(*s.median_n_acc) : nlohmann::json(nullptr);
    j["solved_fraction"] = s.solved_fraction;
    j["mean_wall_seconds"] = s.mean_wall_seconds;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::string convergence_svg(const std::string& title, const std::map<std::string, std::vector<RunRecord>>& runs,
                            double f_star) {
  std::size_t len = 1;
  double lo = f_star;
  double hi = f_star;
  for (const auto& [name, recs] : runs) {
    for (const auto& r : recs) {
      len = std::max(len, r.trace.size());
      for (double v : r.trace) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  const Axes ax{1.0, std::max(2.0, static_cast<double>(len)), lo, hi};
  std::string out = frame(title, ax, "f(x_best)");
  std::size_t slot = 0;
  for (const auto& [name, recs] : runs) {
    const char* color = kColors[slot % kColors.size()];
    std::vector<double> med(len), best(len), worst(len);
    for (std::size_t N = 0; N < len; ++N) {
      std::vector<double> col;
      for (const auto& r : recs) {
        if (!r.trace.empty()) col.push_back(r.trace[std::min(N, r.trace.size() - 1)]);
      }
      if (col.empty()) continue;
      std::sort(col.begin(), col.end());
      const std::size_t m = col.size();
      med[N] = m % 2 == 1 ? col[m / 2] : 0.5 * (col[m / 2 - 1] + col[m / 2]);
      best[N] = col.front();
      worst[N] = col.back();
    }
    out += polyline(ax, med, color, nullptr);
    out += polyline(ax, best, color, "2,3");
    out += polyline(ax, worst, color, "6,3");
    out += legend(slot, name, color);
    ++slot;
  }
  std::vector<double> star(len, f_star);
  out += polyline(ax, star, "#000000", "1,4");
  out += "</svg>\n";
  return out;
}

std::string data_profile_svg(const std::string& title, const std::map<std::string, DataProfile>& profiles) {
  std::size_t len = 1;
  for (const auto& [name, p] : profiles) len = std::max(len, p.solved_fraction.size());
  const Axes ax{1.0, std::max(2.0, static_cast<double>(len)), 0.0, 1.0};
  std::string out = frame(title, ax, "solved fraction");
  std::size_t slot = 0;
  for (const auto& [name, p] : profiles) {
    const char* color = kColors[slot % kColors.size()];
    out += polyline(ax, p.solved_fraction, color, nullptr);
    out += legend(slot, name, color);
    ++slot;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace pbo
