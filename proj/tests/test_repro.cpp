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

#include "qlift/errors.hpp"
#include "qlift/repro.hpp"

#include <doctest.h>

using namespace qlift;

namespace {

const std::filesystem::path fixtures = QLIFT_FIXTURES_DIR;

const ReproRow &row(const ReproReport &r, const std::string &prefix)
{
    for (const auto &x : r.rows) {
        if (x.quantity.rfind(prefix, 0) == 0) return x;
    }
    FAIL("no row starting with " << prefix);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_SUITE("repro") {

TEST_CASE("every bundled example reproduces")
{
    for (const auto &name : repro_examples()) {
        ReproReport r = run_repro(name, fixtures);
        for (const auto &x : r.rows) {
            INFO(name << ": " << x.quantity << " = " << x.computed << ", expected " << x.expected);
            CHECK(x.ok);
        }
        CHECK(r.ok());
        CHECK(r.to_json()["ok"] == true);
    }
}

TEST_CASE("headline values")
{
    CHECK(row(run_repro("transport", fixtures), "objective").computed == "21/10");
    auto pc = run_repro("probchain", fixtures);
    CHECK(row(pc, "trace lower bound at (1y, 1x)").computed == "511/1024");
    CHECK(row(pc, "certified upper bound").computed == "1/2");
    auto ex = run_repro("exceptions", fixtures);
    CHECK(row(ex, "behavioural distance at ({x0,y0}, {z0})").computed == "1/4");
    CHECK(row(ex, "trace lower bound").computed == "1/4");
    for (const char *which : {"pp", "pd", "dp", "dd"}) {
        auto r = run_repro(which, fixtures);
        CHECK(row(r, "the two liftings differ").ok);
        CHECK(row(r, "lifting of the lifting is below").ok);
    }
}

TEST_CASE("unknown examples and missing files")
{
    CHECK_THROWS_AS(run_repro("nope", fixtures), PreconditionError);
    CHECK_THROWS_AS(run_repro("transport", fixtures / "missing"), ParseError);
    nlohmann::json bad = load_json(fixtures / "transport.json");
    bad["distributions"]["P"]["Z"] = "1/2";
    CHECK_THROWS_AS(TransportInstance::from_json(bad), ParseError);
}

}
