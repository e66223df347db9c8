/*
   Copyright 2026 The nce Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NCE_TESTS_HELPERS_HPP
#define NCE_TESTS_HELPERS_HPP

#include <string>

#include "nce/workflow.hpp"

namespace nce::testing {

inline std::string corpus(const std::string& name) { return std::string(NCE_CORPUS_DIR) + "/" + name; }

inline Workspace load(const std::string& name, const std::string& assign = {}) {
  return open_algebra(corpus(name + ".alg"), assign);
}

inline ContextPtr xyz() { return make_context({"x", "y", "z"}); }

inline Element el(const std::string& text, const ContextPtr& ctx) { return parse_element(text, ctx); }

}  // namespace nce::testing

#endif  // NCE_TESTS_HELPERS_HPP
