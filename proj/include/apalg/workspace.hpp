#pragma once

#include "apalg/freqmod.hpp"
#include "apalg/trigpoly.hpp"

#include <map>
#include <string>

namespace apalg {

struct Settings {
    long grid = 0;  // 0 = dimension default
    int refinements = 24;
    long coeff_bound = 32;   // K for NSpan search
    double eps_sign = 1e-9;
    double tol = 1e-6;
    long sample_count = 10000;  // Bezout residual sample grid
    double sample_tmax = 1000.0;
};

// Named state shared by CLI invocations: one generator table, named
// polynomials over it, and solver settings. Persists as a single JSON
// document (version 1) with rationals as "p/q" strings, so save/load is an
// exact round trip.
struct Workspace {
    TablePtr table;
    std::map<std::string, TrigPoly> polys;
    Settings settings;
};

constexpr int kWorkspaceVersion = 1;

/// Throws when a setting is outside its documented range.
void validate_settings(const Settings& s);

void save_workspace(const Workspace& ws, const std::string& path);
Workspace load_workspace(const std::string& path);

std::string workspace_to_json(const Workspace& ws);
Workspace workspace_from_json(const std::string& text);

}  // namespace apalg
