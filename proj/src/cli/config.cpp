#include "inflnet/cli/config.hpp"

#include <set>
#include <sstream>

#include "inflnet/eval/executor.hpp"
#include "inflnet/io.hpp"

namespace inflnet::cli {

namespace {

const std::set<std::string> kScalarKeys = {
    "data", "output", "target", "w_columns", "target_tcode", "trim_rows", "impute", "normalize_through",
    "normalize_target", "split", "train_last", "validation_last", "test_last", "split_fractions", "horizons",
    "ensemble_size", "base_seed", "refit_every", "workers", "max_failure_share", "ucsv.draws", "ucsv.burn_in",
    "ucsv.scale", "ucsv.v_tau", "ucsv.v_h", "ucsv.prior_shape", "ucsv.prior_scale", "ucsv.log_offset", "fadl.lags",
    "fadl.factors", "fadl.bootstrap", "grid.repetitions", "grid.lags", "grid.nodes", "grid.ff_layers",
    "grid.lstm_layers", "grid.states", "grid.epochs", "grid.batch_sizes", "evaluate.models", "evaluate.benchmark",
    "evaluate.loss", "evaluate.fluctuation_window", "importance.shock_sd", "importance.last_lag_only",
    "importance.variables", "importance.members", "memory.candidates"};

const std::vector<std::string> kPrefixes = {"model.", "train.", "tcode.", "group."};

std::vector<Index> index_list(const KeyValueConfig& kv, const std::string& key, std::vector<Index> fallback) {
  if (!kv.contains(key)) return fallback;
  std::vector<Index> out;
  for (const auto& item : kv.get_list(key)) {
    if (item == "max") {
      out.push_back(nn::kFullBatch);
      continue;
    }
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("config key '" + key + "': '" + item + "' is not an integer");
    }
  }
  return out;
}

std::string join(const std::vector<Index>& values, bool batch = false) {
  std::string out;
  for (Index v : values) {
    if (!out.empty()) out += ",";
    out += batch && v == nn::kFullBatch ? std::string("max") : std::to_string(v);
  }
  return out;
}

std::string join(const std::vector<std::string>& values) {
  std::string out;
  for (const auto& v : values) out += (out.empty() ? "" : ",") + v;
  return out;
}

}  // namespace

std::string train_to_string(const nn::TrainConfig& train) {
  std::ostringstream out;
  out << "epochs=" << train.epochs << " batch="
      << (train.batch_size == nn::kFullBatch ? std::string("max") : std::to_string(train.batch_size))
      << " lr=" << format_double(train.adam.learning_rate);
  return out.str();
}

nn::TrainConfig parse_train(const std::string& text) {
  nn::TrainConfig t;
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(normalized);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError("training token '" + token + "' is not key=value");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    try {
      if (key == "epochs") t.epochs = std::stol(value);
      else if (key == "batch") t.batch_size = value == "max" ? nn::kFullBatch : std::stol(value);
      else if (key == "lr") t.adam.learning_rate = std::stod(value);
      else throw ParseError("unknown training key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("training value for '" + key + "' is not a number");
    }
  }
  t.validate();
  return t;
}

void RunConfig::validate() const {
  if (horizons.empty()) throw ValidationError("at least one horizon is required");
  for (Index h : horizons) {
    if (h < 1) throw ValidationError("horizons must be positive");
  }
  if (ensemble_size < 1) throw ValidationError("ensemble_size (K) must be at least 1");
  if (refit_every < 1) throw ValidationError("refit_every must be at least 1");
  if (workers < 1) throw ValidationError("workers must be at least 1");
  if (max_failure_share < 0 || max_failure_share >= 1) throw ValidationError("max_failure_share must be in [0, 1)");
  if (grid_repetitions < 1) throw ValidationError("grid.repetitions must be at least 1");
  if (importance_members < 0) throw ValidationError("importance.members must be non-negative");
  if (memory_candidates < 1) throw ValidationError("memory.candidates must be at least 1");
  if (fluctuation_window != 0 && fluctuation_window < 8) throw ValidationError("evaluate.fluctuation_window must be 0 or at least 8");
  if (!eval::parse_benchmark(benchmark)) throw ValidationError("evaluate.benchmark must be ar1, ucsv or fadl");
  ucsv.validate();
  fadl.validate();
  for (const auto& [kind, t] : model_training) t.validate();
}

KeyValueConfig default_entries() { return to_entries(RunConfig{}); }

RunConfig resolve(const KeyValueConfig& kv) {
  for (const auto& [key, value] : kv.entries()) {
    bool known = kScalarKeys.count(key) != 0;
    for (const auto& p : kPrefixes) known = known || key.rfind(p, 0) == 0;
    if (!known) throw ValidationError("unknown config key '" + key + "'");
  }

  RunConfig c;
  c.data = kv.get_string("data", c.data);
  c.output = kv.get_string("output", c.output);

  auto& p = c.prepare;
  p.target = kv.get_string("target", p.target);
  p.w_columns = kv.get_list("w_columns");
  const auto tcode = kv.get_string("target_tcode", "5");
  if (tcode == "file") {
    p.target_tcode.reset();
  } else {
    p.target_tcode = static_cast<int>(kv.get_int("target_tcode", 5));
  }
  p.trim_rows = static_cast<int>(kv.get_int("trim_rows", p.trim_rows));
  const auto impute = kv.get_string("impute", "full_sample");
  if (impute == "full_sample") p.impute = data::ImputeMode::FullSample;
  else if (impute == "in_sample") p.impute = data::ImputeMode::InSample;
  else throw ValidationError("impute must be full_sample or in_sample");
  const auto through = kv.get_string("normalize_through", "in_sample");
  if (through == "in_sample") p.normalize_through = data::NormalizeThrough::InSample;
  else if (through == "training") p.normalize_through = data::NormalizeThrough::Training;
  else throw ValidationError("normalize_through must be in_sample or training");
  p.normalize_target = kv.get_bool("normalize_target", p.normalize_target);

  const auto split = kv.get_string("split", "dates");
  if (split == "dates") {
    p.splits = data::SplitSpec::fred_md_default();
    if (kv.contains("train_last")) p.splits.train_last = data::YearMonth::parse(*kv.get("train_last"));
    if (kv.contains("validation_last")) {
      const auto v = kv.get_list("validation_last");
      if (v.size() != 3) throw ValidationError("validation_last needs three dates");
      for (std::size_t i = 0; i < 3; ++i) p.splits.validation_last[i] = data::YearMonth::parse(v[i]);
    }
    if (kv.contains("test_last")) p.splits.test_last = data::YearMonth::parse(*kv.get("test_last"));
  } else if (split == "fractions") {
    const auto f = kv.get_list("split_fractions");
    if (f.size() != 3) throw ValidationError("split_fractions needs three numbers");
    try {
      p.splits = data::SplitSpec::fractions(std::stod(f[0]), std::stod(f[1]), std::stod(f[2]));
    } catch (const std::exception&) {
      throw ParseError("split_fractions must be numbers");
    }
  } else {
    throw ValidationError("split must be dates or fractions");
  }
  for (const auto& [key, value] : kv.entries()) {
    if (key.rfind("tcode.", 0) == 0 || key.rfind("group.", 0) == 0) c.series_overrides.set(key, value);
  }

  c.horizons = index_list(kv, "horizons", c.horizons);
  c.ensemble_size = kv.get_int("ensemble_size", c.ensemble_size);
  const long seed = kv.get_int("base_seed", 0);
  if (seed < 0) throw ValidationError("base_seed must be non-negative");
  c.base_seed = static_cast<std::uint64_t>(seed);
  c.refit_every = kv.get_int("refit_every", c.refit_every);
  const long workers = kv.get_int("workers", static_cast<long>(eval::default_workers()));
  if (workers < 1) throw ValidationError("workers must be at least 1");
  c.workers = static_cast<std::size_t>(workers);
  c.max_failure_share = kv.get_double("max_failure_share", c.max_failure_share);

  for (const auto& [name, text] : kv.with_prefix("model.")) {
    const auto kind = models::parse_kind(name);
    auto spec = models::NetworkSpec::parse("kind=" + name + " " + text);
    if (spec.kind != kind) throw ValidationError("model." + name + " names a different kind");
    c.model_specs[kind] = spec;
  }
  for (const auto& [name, text] : kv.with_prefix("train.")) {
    c.model_training[models::parse_kind(name)] = parse_train(text);
  }

  c.ucsv.draws = kv.get_int("ucsv.draws", c.ucsv.draws);
  c.ucsv.burn_in = kv.get_int("ucsv.burn_in", c.ucsv.burn_in);
  c.ucsv.scale = kv.get_double("ucsv.scale", c.ucsv.scale);
  c.ucsv.v_tau = kv.get_double("ucsv.v_tau", c.ucsv.v_tau);
  c.ucsv.v_h = kv.get_double("ucsv.v_h", c.ucsv.v_h);
  c.ucsv.prior_shape_tau = c.ucsv.prior_shape_h = kv.get_double("ucsv.prior_shape", c.ucsv.prior_shape_tau);
  c.ucsv.prior_scale_tau = c.ucsv.prior_scale_h = kv.get_double("ucsv.prior_scale", c.ucsv.prior_scale_tau);
  c.ucsv.log_offset = kv.get_double("ucsv.log_offset", c.ucsv.log_offset);
  c.ucsv.seed = c.base_seed;
  c.fadl.lags = kv.get_int("fadl.lags", c.fadl.lags);
  c.fadl.factors = kv.get_int("fadl.factors", c.fadl.factors);
  c.fadl.bootstrap = kv.get_int("fadl.bootstrap", c.fadl.bootstrap);
  c.fadl.seed = c.base_seed;

  c.grid_repetitions = kv.get_int("grid.repetitions", c.grid_repetitions);
  c.stage_one.lags = index_list(kv, "grid.lags", c.stage_one.lags);
  c.stage_one.nodes = index_list(kv, "grid.nodes", c.stage_one.nodes);
  c.stage_one.ff_layers = index_list(kv, "grid.ff_layers", c.stage_one.ff_layers);
  c.stage_one.lstm_layers = index_list(kv, "grid.lstm_layers", c.stage_one.lstm_layers);
  c.stage_one.states = index_list(kv, "grid.states", c.stage_one.states);
  c.stage_two.epochs = index_list(kv, "grid.epochs", c.stage_two.epochs);
  c.stage_two.batch_sizes = index_list(kv, "grid.batch_sizes", c.stage_two.batch_sizes);

  if (kv.contains("evaluate.models")) c.evaluate_models = kv.get_list("evaluate.models");
  c.benchmark = kv.get_string("evaluate.benchmark", c.benchmark);
  const auto loss = kv.get_string("evaluate.loss", "rmse");
  if (loss == "rmse") c.loss = eval::Loss::Rmse;
  else if (loss == "mae") c.loss = eval::Loss::Mae;
  else throw ValidationError("evaluate.loss must be rmse or mae");
  c.fluctuation_window = kv.get_int("evaluate.fluctuation_window", c.fluctuation_window);

  c.shock_sd = kv.get_double("importance.shock_sd", c.shock_sd);
  c.last_lag_only = kv.get_bool("importance.last_lag_only", c.last_lag_only);
  c.importance_variables = kv.get_list("importance.variables");
  c.importance_members = kv.get_int("importance.members", c.importance_members);
  c.memory_candidates = kv.get_int("memory.candidates", c.memory_candidates);

  c.validate();
  return c;
}

KeyValueConfig to_entries(const RunConfig& c) {
  KeyValueConfig kv;
  kv.set("data", c.data);
  kv.set("output", c.output);
  const auto& p = c.prepare;
  kv.set("target", p.target);
  kv.set("w_columns", join(p.w_columns));
  kv.set("target_tcode", p.target_tcode ? std::to_string(*p.target_tcode) : std::string("file"));
  kv.set("trim_rows", std::to_string(p.trim_rows));
  kv.set("impute", p.impute == data::ImputeMode::FullSample ? "full_sample" : "in_sample");
  kv.set("normalize_through", p.normalize_through == data::NormalizeThrough::InSample ? "in_sample" : "training");
  kv.set("normalize_target", p.normalize_target ? "true" : "false");
  if (p.splits.uses_dates()) {
    kv.set("split", "dates");
    kv.set("train_last", p.splits.train_last->to_string());
    std::vector<std::string> v;
    for (const auto& d : p.splits.validation_last) v.push_back(d ? d->to_string() : std::string());
    kv.set("validation_last", join(v));
    if (p.splits.test_last) kv.set("test_last", p.splits.test_last->to_string());
  } else {
    kv.set("split", "fractions");
    kv.set("split_fractions", format_double(p.splits.train_fraction) + "," + format_double(p.splits.validation_fraction) +
                                  "," + format_double(p.splits.test_fraction));
  }
  for (const auto& [k, v] : c.series_overrides.entries()) kv.set(k, v);

  kv.set("horizons", join(c.horizons));
  kv.set("ensemble_size", std::to_string(c.ensemble_size));
  kv.set("base_seed", std::to_string(c.base_seed));
  kv.set("refit_every", std::to_string(c.refit_every));
  kv.set("workers", std::to_string(c.workers));
  kv.set("max_failure_share", format_double(c.max_failure_share));
  for (const auto& [kind, spec] : c.model_specs) {
    // dimensions come from the data
    auto s = spec;
    s.pool_width = 0;
    s.cpi_width = 0;
    auto text = s.to_string();
    const auto kind_token = "kind=" + std::string(models::kind_name(kind)) + " ";
    if (text.rfind(kind_token, 0) == 0) text = text.substr(kind_token.size());
    kv.set("model." + std::string(models::kind_name(kind)), text);
  }
  for (const auto& [kind, t] : c.model_training) kv.set("train." + std::string(models::kind_name(kind)), train_to_string(t));

  kv.set("ucsv.draws", std::to_string(c.ucsv.draws));
  kv.set("ucsv.burn_in", std::to_string(c.ucsv.burn_in));
  kv.set("ucsv.scale", format_double(c.ucsv.scale));
  kv.set("ucsv.v_tau", format_double(c.ucsv.v_tau));
  kv.set("ucsv.v_h", format_double(c.ucsv.v_h));
  kv.set("ucsv.prior_shape", format_double(c.ucsv.prior_shape_tau));
  kv.set("ucsv.prior_scale", format_double(c.ucsv.prior_scale_tau));
  kv.set("ucsv.log_offset", format_double(c.ucsv.log_offset));
  kv.set("fadl.lags", std::to_string(c.fadl.lags));
  kv.set("fadl.factors", std::to_string(c.fadl.factors));
  kv.set("fadl.bootstrap", std::to_string(c.fadl.bootstrap));

  kv.set("grid.repetitions", std::to_string(c.grid_repetitions));
  kv.set("grid.lags", join(c.stage_one.lags));
  kv.set("grid.nodes", join(c.stage_one.nodes));
  kv.set("grid.ff_layers", join(c.stage_one.ff_layers));
  kv.set("grid.lstm_layers", join(c.stage_one.lstm_layers));
  kv.set("grid.states", join(c.stage_one.states));
  kv.set("grid.epochs", join(c.stage_two.epochs));
  kv.set("grid.batch_sizes", join(c.stage_two.batch_sizes, true));

  kv.set("evaluate.models", join(c.evaluate_models));
  kv.set("evaluate.benchmark", c.benchmark);
  kv.set("evaluate.loss", c.loss == eval::Loss::Rmse ? "rmse" : "mae");
  kv.set("evaluate.fluctuation_window", std::to_string(c.fluctuation_window));
  kv.set("importance.shock_sd", format_double(c.shock_sd));
  kv.set("importance.last_lag_only", c.last_lag_only ? "true" : "false");
  kv.set("importance.variables", join(c.importance_variables));
  kv.set("importance.members", std::to_string(c.importance_members));
  kv.set("memory.candidates", std::to_string(c.memory_candidates));
  return kv;
}

}  // namespace inflnet::cli
