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

#ifndef FCV_APP_SVG_HPP_
#define FCV_APP_SVG_HPP_

#include <string>
#include <vector>

// Just enough SVG for the report plots.
namespace fcv::app {

class Svg {
 public:
  Svg(int width, int height);

  void rect(double x, double y, double w, double h, const std::string& fill);
  void line(double x1, double y1, double x2, double y2, const std::string& stroke, bool dashed = false);
  void circle(double cx, double cy, double r, const std::string& fill);
  // anchor: start, middle or end.
  void text(double x, double y, const std::string& s, int size = 12, const std::string& anchor = "start");

  std::string str() const;

 private:
  int width_;
  int height_;
  std::vector<std::string> items_;
};

std::string xml_escape(const std::string& s);

// Scatter of labeled points with linear axes, e.g. accuracy against time.
struct ScatterPoint {
  std::string label;
  double x = 0.0;
  double y = 0.0;
};
std::string scatter_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                         const std::vector<ScatterPoint>& points);

}  // namespace fcv::app

#endif  // FCV_APP_SVG_HPP_
