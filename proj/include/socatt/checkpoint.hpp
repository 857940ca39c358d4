#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "socatt/model.hpp"

namespace socatt {

inline constexpr int kCheckpointVersion = 1;

/// A trained model together with the configuration that produced it.
struct Checkpoint {
  SocialAttentionModel model;
  nlohmann::json config;
};

/// Self-describing JSON: every tensor carries its shape and row-major data;
/// the word and author tables are inlined. Doubles are written in shortest
/// round-trip form, so a reloaded model predicts bit-identically.
nlohmann::json checkpoint_to_json(const SocialAttentionModel& model, const nlohmann::json& config);
Checkpoint checkpoint_from_json(const nlohmann::json& doc);

void save_checkpoint(const SocialAttentionModel& model, const nlohmann::json& config,
                     const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace socatt
