#pragma once

#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

/// Lets CLI11 read its --config file as JSON. Top-level keys are long option
/// names; an object keyed by a subcommand name holds that subcommand's
/// options. Command-line flags take precedence over the file.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return to_json(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static nlohmann::json to_json(const CLI::App* app, bool default_also) {
    nlohmann::json out = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        out[name] = res.size() == 1 ? nlohmann::json(res.front()) : nlohmann::json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        out[name] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({}))
      if (sub->count() > 0) out[sub->get_name()] = to_json(sub, default_also);
    return out;
  }

  static void collect(const nlohmann::json& node, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object()) {
        auto path = parents;
        path.push_back(key);
        collect(value, path, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }

  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }
};
