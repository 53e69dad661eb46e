// Copyright 2026 The soapcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Deterministic text, CSV and SVG emission.  All numbers go through fmt
// with fixed format strings, so identical inputs give identical bytes.

#ifndef SOAPCERT_REPORT_H_
#define SOAPCERT_REPORT_H_

#include <string>
#include <string_view>

#include "soapcert/certify.h"
#include "soapcert/cone.h"
#include "soapcert/curvature.h"
#include "soapcert/space_form.h"

namespace soapcert {

// Shortest round-trip-safe rendering, "%.17g".
std::string FormatExact(double x);
// "%.12g", used in human-facing reports.
std::string FormatNumber(double x);
// Comma-separated coordinates.
std::string FormatCoords(const Vec& v);

// Indented "key: value" document.
class TextReport {
 public:
  void Section(std::string_view name);
  void EndSection();
  void Value(std::string_view key, std::string_view value);
  void Number(std::string_view key, double value);
  // Value in radians followed by its multiple of pi to 4 decimals.
  void Angle(std::string_view key, double radians);

  const std::string& str() const { return text_; }

 private:
  void Indent();

  std::string text_;
  int depth_ = 0;
};

void AppendTc(TextReport& report, const TCReport& tc);
void AppendGaussBonnet(TextReport& report, const GaussBonnetTerms& gb);
void AppendCertify(TextReport& report, const CertifyResult& result);

// Header "edge_id,s,r,theta,khat_nu", one row per sample.
std::string DevelopmentCsv(const ConeDevelopment& dev);

// Developed edges drawn in the 2-D model: Poincare disk for hyperbolic,
// orthographic projection for spherical, polar plane for flat.
std::string DevelopmentSvg(const SpaceForm& space,
                           const ConeDevelopment& dev);

}  // namespace soapcert

#endif  // SOAPCERT_REPORT_H_
