// Copyright 2026 The fcv Authors
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

#include "fcv/app/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace fcv::app {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

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

Svg::Svg(int width, int height) : width_(width), height_(height) {}

void Svg::rect(double x, double y, double w, double h, const std::string& fill) {
  items_.push_back("<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
                   num(h) + "\" fill=\"" + fill + "\"/>");
}

void Svg::line(double x1, double y1, double x2, double y2, const std::string& stroke, bool dashed) {
  items_.push_back("<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
                   num(y2) + "\" stroke=\"" + stroke + "\"" +
                   (dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>");
}

void Svg::circle(double cx, double cy, double r, const std::string& fill) {
  items_.push_back("<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" +
                   fill + "\"/>");
}

void Svg::text(double x, double y, const std::string& s, int size, const std::string& anchor) {
  items_.push_back("<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
                   std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + xml_escape(s) + "</text>");
}

std::string Svg::str() const {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) +
                    "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " + std::to_string(width_) +
                    " " + std::to_string(height_) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const std::string& s : items_) out += s + "\n";
  out += "</svg>\n";
  return out;
}

std::string scatter_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                         const std::vector<ScatterPoint>& points) {
  constexpr int kW = 560;
  constexpr int kH = 400;
  constexpr double kLeft = 70, kRight = 30, kTop = 40, kBottom = 60;
  double x_max = 0.0;
  double y_min = 1.0;
  double y_max = 0.0;
  for (const auto& p : points) {
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  x_max = x_max > 0.0 ? x_max * 1.15 : 1.0;
  y_min = std::max(0.0, y_min - 0.1);
  y_max = std::min(1.0, y_max + 0.05);
  if (y_max <= y_min) y_max = y_min + 0.1;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + x / x_max * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * ph; };

  Svg svg(kW, kH);
  svg.text(kW / 2.0, 24, title, 15, "middle");
  svg.line(kLeft, kTop + ph, kLeft + pw, kTop + ph, "black");
  svg.line(kLeft, kTop, kLeft, kTop + ph, "black");
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_max * i / 4.0;
    const double yv = y_min + (y_max - y_min) * i / 4.0;
    svg.line(px(xv), kTop + ph, px(xv), kTop + ph + 5, "black");
    svg.text(px(xv), kTop + ph + 18, num(xv), 10, "middle");
    svg.line(kLeft - 5, py(yv), kLeft, py(yv), "black");
    svg.text(kLeft - 8, py(yv) + 4, num(yv), 10, "end");
  }
  svg.text(kLeft + pw / 2, kH - 18, x_label, 12, "middle");
  svg.text(16, kTop + ph / 2, y_label, 12, "start");
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    svg.circle(px(p.x), py(p.y), 6, colors[i % 5]);
    svg.text(px(p.x) + 9, py(p.y) - 8, p.label, 11);
  }
  return svg.str();
}

}  // namespace fcv::app
