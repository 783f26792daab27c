/*
 * Copyright 2026 The qlift Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "qlift/behaviour.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qlift {

struct ReproRow {
    std::string quantity;
    std::string computed;
    std::string expected;
    bool ok = false;
};

struct ReproReport {
    std::string example;
    std::vector<ReproRow> rows;
    bool ok() const;
    nlohmann::json to_json() const;
};

// Names accepted by run_repro.
const std::vector<std::string> &repro_examples();

// A V-graph plus named subdistributions over its elements.
struct TransportInstance {
    VGraph d;
    std::map<std::string, Term> distributions;
    static TransportInstance from_json(const nlohmann::json &j);
};

nlohmann::json load_json(const std::filesystem::path &path);

ReproReport repro_transport(const TransportInstance &inst);
// pp, pd, dp or dd: outer and inner monad of the two-layer composite.
ReproReport repro_compositionality(const std::string &which);
ReproReport repro_probchain(const CoalgebraModel &model, const Certificate &cert);
ReproReport repro_exceptions(const CoalgebraModel &model, const Certificate &cert, unsigned n);

// Loads the bundled fixtures from `fixtures` as needed.
ReproReport run_repro(const std::string &example, const std::filesystem::path &fixtures);

} // namespace qlift
