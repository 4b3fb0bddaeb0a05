#pragma once

// INI-style run configuration for the command-line tool.
//
//   label = my_run
//   scheme = ewi_efp              ; solve
//   schemes = ewi_efp, ewi_fp     ; convergence / compare
//   tau = 1e-3                    ; solve
//   h = 0.0078125                 ; solve (or N = 4096)
//   fs_oversample = 16
//   norms = L2, H1
//
//   [problem]
//   potential = box(-4,-2,2)      ; none | box(depth,left,right) | power(gamma)
//   nonlinearity = power(-1,0.1)  ; none | cubic | power | two_power | log_power
//   datum = type1_h2              ; type1_h2 | type2_smooth | h3_datum | plane_wave(A,l)
//   a = -16
//   b = 16
//   T = 1
//
//   [sweep]                       ; exactly one of tau / h
//   tau = 1e-2, 5e-3, 2.5e-3
//
//   [reference]
//   scheme = strang
//   tau = 1e-5
//   h = 0.0078125
//   verify = false
//   per_scheme = false            ; true: each scheme against its own reference
//
//   [bands]                       ; <scheme>.<norm> = lo, hi
//   ewi_efp.L2 = 0.8, 1.2
//
//   [gates]                       ; gap|ratio|fluct.<first>.<second>.<norm> = threshold
//   gap.ewi_fs.ewi_efp.L2 = 0.6
//
// Unknown keys or sections are a ConfigError.

#include <filesystem>
#include <string>

#include "nlse/experiments.hpp"

namespace nlse {

struct SolveJob {
    std::string label = "solve";
    SchemeConfig config;
    InitialDatum datum;
};

SolveJob parse_solve_config(const std::string& ini_text);
StudySpec parse_study_config(const std::string& ini_text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace nlse
