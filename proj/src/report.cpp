// Copyright 2026 The mmsalloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mmsalloc/harness.hpp"

namespace mmsalloc {

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string report_csv(const std::vector<TrialStats>& stats) {
  std::ostringstream out;
  out << kReportHeader << '\n';
  for (const TrialStats& s : stats) {
    const std::optional<double> monitor = s.lemma1_monitor();
    out << s.instance_id << ',' << s.n << ',' << s.m << ',' << s.t << ',' << to_string(s.threshold)
        << ',' << fixed(s.per_agent_fail_rate(), 6) << ','
        << fixed(std::pow(0.75, s.t), 15) << ',' << fixed(s.full_success_rate(), 6) << ','
        << (monitor ? fixed(*monitor, 6) : std::string("NA")) << '\n';
  }
  return out.str();
}

std::string report_svg(const std::vector<TrialStats>& stats) {
  // Mean success rate at 4/(23t) per t.
  std::map<int, std::pair<double, int>> by_t;
  for (const TrialStats& s : stats) {
    auto& [sum, count] = by_t[s.t];
    sum += 1.0 - s.per_agent_fail_rate();
    ++count;
  }
  const double width = 480, height = 320, left = 50, right = 20, top = 20, bottom = 40;
  int t_max = 1;
  for (const auto& [t, unused] : by_t) t_max = std::max(t_max, t);
  auto x_of = [&](double t) { return left + (t - 1) / std::max(1, t_max - 1) * (width - left - right); };
  auto y_of = [&](double rate) { return top + (1.0 - rate) * (height - top - bottom); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << y_of(0) << "\" x2=\"" << width - right
      << "\" y2=\"" << y_of(0) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << y_of(0) << "\" x2=\"" << left << "\" y2=\""
      << y_of(1) << "\" stroke=\"black\"/>\n";
  for (int t = 1; t <= t_max; ++t) {
    out << "<text x=\"" << x_of(t) << "\" y=\"" << y_of(0) + 15 << "\" text-anchor=\"middle\">" << t
        << "</text>\n";
  }
  for (int tick = 0; tick <= 4; ++tick) {
    const double rate = tick / 4.0;
    out << "<text x=\"" << left - 6 << "\" y=\"" << y_of(rate) + 4 << "\" text-anchor=\"end\">"
        << fixed(rate, 2) << "</text>\n";
  }
  out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 6
      << "\" text-anchor=\"middle\">t</text>\n";

  std::ostringstream reference;
  for (int t = 1; t <= t_max; ++t) {
    reference << (t == 1 ? "" : " ") << fixed(x_of(t), 1) << ',' << fixed(y_of(1.0 - std::pow(0.75, t)), 1);
  }
  out << "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\" points=\""
      << reference.str() << "\"/>\n";

  std::ostringstream measured;
  bool first = true;
  for (const auto& [t, acc] : by_t) {
    const double rate = acc.first / acc.second;
    measured << (first ? "" : " ") << fixed(x_of(t), 1) << ',' << fixed(y_of(rate), 1);
    first = false;
    out << "<circle cx=\"" << fixed(x_of(t), 1) << "\" cy=\"" << fixed(y_of(rate), 1)
        << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"" << measured.str() << "\"/>\n";
  out << "<text x=\"" << width - right << "\" y=\"" << top + 10
      << "\" text-anchor=\"end\">success at 4/(23t); dashed: 1 - (3/4)^t</text>\n";
  out << "</svg>\n";
  return out.str();
}

void emit_report(const std::vector<TrialStats>& stats, const std::filesystem::path& out_dir,
                 bool with_svg) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / "report.csv", report_csv(stats));
  if (with_svg) write_file(out_dir / "success_vs_t.svg", report_svg(stats));
}

}  // namespace mmsalloc
