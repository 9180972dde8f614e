// Copyright 2026 The Guideline Structure Authors.
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

// GEM-subset XML for the knowledge component of a guideline.
//
//   <guideline>
//     <identity>
//       <documentId>...</documentId>
//       <title>...</title>
//       <property name="...">...</property>
//     </identity>
//     <knowledgeComponent>
//       <conditional id="c1" ...>
//         <condition>...</condition>
//         <action id="r1" ...>...</action>
//         <conditional ...>...</conditional>
//       </conditional>
//       <action ...>...</action>
//     </knowledgeComponent>
//   </guideline>
//
// Emission is byte-deterministic: fixed attribute order, LF newlines and a
// two-space indent. See docs/gem_subset.md for the attribute list.

#ifndef STRUCTURE_GEM_XML_HPP_
#define STRUCTURE_GEM_XML_HPP_

#include <string>
#include <string_view>

#include "structure/scope_engine.hpp"

namespace structure {

std::string EmitXml(const ScopeTree& tree);

// Throws a schema Error naming the offending element on unknown elements,
// actions with children, or malformed attributes. The result is not checked
// against tree invariants.
ScopeTree ParseXml(std::string_view xml);

std::string EscapeXml(std::string_view raw, bool attribute);

}  // namespace structure

#endif  // STRUCTURE_GEM_XML_HPP_
