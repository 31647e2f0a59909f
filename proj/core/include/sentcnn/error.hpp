// Copyright 2026 The sentcnn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SENTCNN_ERROR_HPP_
#define SENTCNN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sentcnn {

// All library failures surface as sentcnn::Error. InputError marks problems
// with caller-supplied data (bad files, bad config, shape mismatches) so the
// CLI can map them to the usage exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace sentcnn

#endif  // SENTCNN_ERROR_HPP_
