// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef TXPACK_JSON_IO_H
#define TXPACK_JSON_IO_H

#include <txpack/equilibrium.h>
#include <txpack/fees.h>
#include <txpack/game.h>
#include <txpack/mempool.h>
#include <txpack/simulator.h>
#include <txpack/strategy.h>

#include <json.hpp>

#include <vector>

namespace txpack {

inline constexpr int report_schema_version = 1;

nlohmann::json to_json(const Mempool& mempool);
nlohmann::json to_json(const Equilibrium& eq, const Mempool& mempool, const GameParams& params, SizeMode mode);
nlohmann::json to_json(const MixedStrategy& strategy);
nlohmann::json to_json(const Block& block);
nlohmann::json to_json(const FeeBounds& fees);
nlohmann::json to_json(const EquilibriumVerdict& verdict);
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const ExperimentReport& report);

/// {"schema_version", "config", "reports"}
nlohmann::json experiment_document(const ExperimentConfig& config, const std::vector<ExperimentReport>& reports);

/// Parses the experiment config object. Throws ValidationError.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

/// Reads marginals keyed by transaction id from an equilibrium document
/// ({"marginals": [{"id", "p"}, ...]}) and orders them like `mempool`.
std::vector<double> parse_profile(const nlohmann::json& doc, const Mempool& mempool);

/// Rounds every floating-point number in `doc` to `digits` significant
/// digits, in place.
void round_numbers(nlohmann::json& doc, int digits = 12);

} // namespace txpack

#endif // TXPACK_JSON_IO_H
