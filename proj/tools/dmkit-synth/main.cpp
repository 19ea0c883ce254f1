// Copyright 2026 The dmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the synthetic datasets used by the tests as CSV plus a schema file.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <dmkit/dataset.hpp>
#include <dmkit/errors.hpp>
#include <dmkit/synthetic.hpp>

int main(int argc, char** argv) {
    CLI::App app{"dmkit-synth: generate synthetic datasets"};
    std::string kind = "survey";
    std::size_t rows = 200;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = ".";
    std::string name;
    app.add_option("kind", kind, "survey | planted | recovery | separable")
        ->check(CLI::IsMember({"survey", "planted", "recovery", "separable"}))
        ->capture_default_str();
    app.add_option("--rows", rows)->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--out-dir", out_dir)->capture_default_str();
    app.add_option("--name", name, "File stem (default: the kind)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (name.empty()) name = kind;

    try {
        const dmkit::Dataset ds = [&] {
            if (kind == "survey") return dmkit::make_survey(rows, seed);
            if (kind == "planted") return dmkit::make_planted(rows, 4, seed);
            if (kind == "recovery") return dmkit::to_dataset(dmkit::make_recovery(rows, 50, 6, seed));
            return dmkit::to_dataset(dmkit::make_separable(rows, 10, seed));
        }();
        std::filesystem::create_directories(out_dir);
        std::ofstream csv(out_dir / (name + ".csv"), std::ios::binary);
        std::ofstream schema(out_dir / (name + ".schema"), std::ios::binary);
        if (!csv || !schema) throw dmkit::ArgumentError("cannot write to " + out_dir.string());
        dmkit::write_csv(csv, ds);
        schema << dmkit::format_schema(ds.schema());
        if (kind == "survey") {
            std::ofstream map(out_dir / (name + ".triviality"), std::ios::binary);
            map << dmkit::survey_triviality_map();
        }
    } catch (const dmkit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    }
    return 0;
}
