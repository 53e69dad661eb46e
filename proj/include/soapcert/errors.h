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

#ifndef SOAPCERT_ERRORS_H_
#define SOAPCERT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace soapcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input does not describe a legal graph, apex, or option set.  The CLI maps
// this to exit status 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A geometric computation left its domain of validity (antipodal points,
// conjugate radius, apex on the graph, ...).  The CLI maps this to exit
// status 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace soapcert

#endif  // SOAPCERT_ERRORS_H_
