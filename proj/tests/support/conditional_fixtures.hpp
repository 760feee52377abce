// Copyright 2026 The Cellgauge Authors
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

#pragma once

// Workbooks with up to four nested or chained IF constructs.

#include <string>
#include <vector>

#include "support/builders.hpp"

namespace cellgauge::testing {

struct ConditionalFixture {
  std::string name;
  Workbook workbook;
};

inline std::vector<ConditionalFixture> conditional_fixtures() {
  std::vector<ConditionalFixture> out;
  auto add = [&](std::string name, CellList cells) { out.push_back({std::move(name), book(cells)}); };
  add("single", {{"A1", "1"}, {"B1", "2"}, {"C1", "3"}, {"D1", "=IF(A1>0,B1,C1)"}});
  add("nested", {{"A1", "1"}, {"A2", "2"}, {"B1", "=IF(A1>0,IF(A2>0,1,2),5)"}});
  add("chained", {{"A1", "1"}, {"B1", "4"}, {"D1", "=IF(B1>0,1,2)"}, {"E1", "=IF(A1>0,D1,5)"}});
  add("two_arg", {{"A1", "1"}, {"B1", "=IF(A1>0,7)"}});
  add("both_nested",
      {{"A1", "1"}, {"B1", "=IF(A1>0,IF(A1>1,1,2),IF(A1<-1,3,4))"}});
  add("condition_holds_if", {{"A1", "1"}, {"B1", "=IF(IF(A1>0,TRUE,FALSE),10,20)"}});
  add("shared_precedent",
      {{"A1", "1"}, {"B1", "=IF(A1>0,1,2)"}, {"C1", "=IF(A1<5,B1,B1*2)"}});
  add("four_deep", {{"A1", "1"},
                    {"B1", "=IF(A1>3,1,IF(A1>2,2,IF(A1>1,3,IF(A1>0,4,5))))"}});
  add("chain_of_four", {{"A1", "1"},
                        {"B1", "=IF(A1>0,1,0)"},
                        {"B2", "=IF(A1>1,B1,2)"},
                        {"B3", "=IF(A1>2,B2,B1)"},
                        {"B4", "=IF(A1>3,B3+B2,B2)"}});
  add("through_plain_cells", {{"A1", "1"},
                              {"B1", "=IF(A1>0,1,2)"},
                              {"C1", "=B1*3"},
                              {"D1", "=C1+1"},
                              {"E1", "=IF(A1>1,D1,A1)"}});
  add("sum_of_branches", {{"A1", "1"},
                          {"B1", "=IF(A1>0,1,2)"},
                          {"B2", "=IF(A1>1,3,4)"},
                          {"C1", "=IF(A1>2,B1+B2,0)"}});
  add("range_reaches_ifs", {{"A1", "1"},
                            {"A2", "=IF(A1>0,1,2)"},
                            {"A3", "=IF(A1>1,1,2)"},
                            {"B1", "=IF(A1>2,SUM(A2:A3),9)"}});
  add("mixed_depth", {{"A1", "1"},
                      {"B1", "=IF(A1>0,IF(A1>5,1,2),3)"},
                      {"C1", "=IF(B1>1,B1,IF(A1>9,4,5))"}});
  add("no_conditionals", {{"A1", "1"}, {"B1", "=A1*2"}});
  return out;
}

}  // namespace cellgauge::testing
