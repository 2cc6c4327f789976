/* Copyright 2026 The govsim Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "govsim/scenario_io.hpp"

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "govsim/errors.hpp"
#include "text_util.hpp"

namespace govsim {

namespace {

using nlohmann::json;

// Every object walks through one of these so an unrecognized key is a hard
// error instead of a silently ignored typo.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ParseError(path_ + ": expected an object");
  }

  const json& require(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end())
      throw ParseError(path_ + ": missing key '" + std::string(key) + "'");
    return *it;
  }

  const json* optional(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string sub(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key()))
        throw ParseError(path_ + ": unknown key '" + item.key() + "'");
    }
  }

  const json& raw() const { return j_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<int>();
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !j.is_number_integer())
    throw ParseError(path + ": expected a non-negative integer");
  if (j.is_number_integer() && j.get<std::int64_t>() < 0)
    throw ParseError(path + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

std::array<double, 2> as_range(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(path + ": expected [lo, hi]");
  return {as_double(j[0], path + "[0]"), as_double(j[1], path + "[1]")};
}

Platform parse_platform(const json& j, const std::string& path) {
  Obj obj(j, path);
  Platform platform;

  const json& jdevs = obj.require("devices");
  if (!jdevs.is_array()) throw ParseError(path + ".devices: expected an array");
  for (std::size_t i = 0; i < jdevs.size(); ++i) {
    const std::string dpath = path + ".devices[" + std::to_string(i) + "]";
    Obj jd(jdevs[i], dpath);
    DeviceSpec dev;
    dev.id = as_string(jd.require("id"), dpath + ".id");
    const std::string kind = as_string(jd.require("kind"), dpath + ".kind");
    if (kind == "cpu") {
      dev.kind = DeviceKind::CpuCluster;
    } else if (kind == "gpu") {
      dev.kind = DeviceKind::Gpu;
    } else {
      throw ParseError(dpath + ".kind: expected \"cpu\" or \"gpu\"");
    }
    dev.core_count = as_int(jd.require("cores"), dpath + ".cores");
    const json& jfreqs = jd.require("freqs");
    if (!jfreqs.is_array())
      throw ParseError(dpath + ".freqs: expected an array");
    for (std::size_t k = 0; k < jfreqs.size(); ++k) {
      const std::string fpath = dpath + ".freqs[" + std::to_string(k) + "]";
      Obj jf(jfreqs[k], fpath);
      FreqLevel lvl;
      lvl.freq_hz = as_double(jf.require("hz"), fpath + ".hz");
      lvl.voltage_v = as_double(jf.require("volts"), fpath + ".volts");
      lvl.idle_power_w = as_double(jf.require("idle_w"), fpath + ".idle_w");
      jf.finish();
      dev.freq_table.push_back(lvl);
    }
    jd.finish();
    platform.devices.push_back(std::move(dev));
  }

  const std::string tpath = path + ".thermal";
  Obj jt(obj.require("thermal"), tpath);
  platform.thermal.r_th = as_double(jt.require("r_th"), tpath + ".r_th");
  platform.thermal.c_th = as_double(jt.require("c_th"), tpath + ".c_th");
  platform.thermal.t_ambient_c =
      as_double(jt.require("t_ambient"), tpath + ".t_ambient");
  platform.thermal.t_throttle_c =
      as_double(jt.require("t_throttle"), tpath + ".t_throttle");
  platform.thermal.t_release_c =
      as_double(jt.require("t_release"), tpath + ".t_release");
  platform.thermal.throttle_cap = static_cast<std::size_t>(
      as_u64(jt.require("throttle_cap"), tpath + ".throttle_cap"));
  jt.finish();
  obj.finish();
  return platform;
}

PerformanceTarget parse_target(const json& j, const std::string& path) {
  Obj obj(j, path);
  PerformanceTarget target;
  target.latency_ms = as_double(obj.require("latency_ms"), path + ".latency_ms");
  if (const json* f = obj.optional("min_top1"))
    target.min_top1 = as_double(*f, path + ".min_top1");
  obj.finish();
  return target;
}

ProfileSource parse_profiles(const json& j, const std::string& path,
                             const std::filesystem::path& base_dir) {
  Obj obj(j, path);
  if (const json* file = obj.optional("file")) {
    ProfileFiles files;
    files.profiles_csv = base_dir / as_string(*file, path + ".file");
    files.accuracy_csv =
        base_dir / as_string(obj.require("accuracy"), path + ".accuracy");
    obj.finish();
    return files;
  }
  SyntheticSource src;
  src.seed = as_u64(obj.require("seed"), path + ".seed");
  src.subnet_count = as_int(obj.require("subnets"), path + ".subnets");
  if (const json* r = obj.optional("base_latency_ms"))
    src.base_latency_ms = as_range(*r, path + ".base_latency_ms");
  if (const json* r = obj.optional("busy_power_w"))
    src.busy_power_w = as_range(*r, path + ".busy_power_w");
  if (const json* r = obj.optional("accuracy_pct"))
    src.accuracy_pct = as_range(*r, path + ".accuracy_pct");
  if (const json* scales = obj.optional("device_scales")) {
    if (!scales->is_object())
      throw ParseError(path + ".device_scales: expected an object");
    for (const auto& item : scales->items())
      src.device_scales[item.key()] =
          as_double(item.value(), path + ".device_scales." + item.key());
  }
  obj.finish();
  return src;
}

std::vector<Event> parse_events(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  std::vector<Event> events;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string epath = path + "[" + std::to_string(i) + "]";
    Obj obj(j[i], epath);
    Event ev;
    ev.at_s = as_double(obj.require("at_s"), epath + ".at_s");
    const std::string kind = as_string(obj.require("kind"), epath + ".kind");
    if (kind == "target") {
      TargetChange change;
      change.target.latency_ms =
          as_double(obj.require("latency_ms"), epath + ".latency_ms");
      if (const json* f = obj.optional("min_top1"))
        change.target.min_top1 = as_double(*f, epath + ".min_top1");
      ev.change = change;
    } else if (kind == "contention") {
      ev.change =
          ContentionSet{as_double(obj.require("alpha"), epath + ".alpha")};
    } else if (kind == "ambient") {
      ev.change = AmbientSet{
          as_double(obj.require("t_ambient_c"), epath + ".t_ambient_c")};
    } else {
      throw ParseError(epath +
                       ".kind: expected \"target\", \"contention\" or \"ambient\"");
    }
    obj.finish();
    events.push_back(std::move(ev));
  }
  return events;
}

json parse_document(std::string_view text, const std::string& what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError(what + ": malformed JSON");
  return j;
}

}  // namespace

Scenario scenario_from_json_text(std::string_view text,
                                 const std::filesystem::path& base_dir,
                                 std::string name) {
  const json j = parse_document(text, name);
  Obj obj(j, "scenario");

  Scenario sc;
  sc.name = std::move(name);
  sc.duration_s = as_double(obj.require("duration_s"), "scenario.duration_s");
  if (const json* cp = obj.optional("control_period_s"))
    sc.control_period_s = as_double(*cp, "scenario.control_period_s");

  if (const json* req = obj.optional("requests")) {
    Obj jr(*req, "scenario.requests");
    const std::string model =
        as_string(jr.require("model"), "scenario.requests.model");
    if (model == "back_to_back") {
      sc.request_model = RequestModel::BackToBack;
    } else if (model == "periodic") {
      sc.request_model = RequestModel::Periodic;
      sc.request_period_s =
          as_double(jr.require("period_s"), "scenario.requests.period_s");
    } else {
      throw ParseError(
          "scenario.requests.model: expected \"back_to_back\" or \"periodic\"");
    }
    jr.finish();
  }

  sc.initial_target = parse_target(obj.require("target"), "scenario.target");
  if (const json* a = obj.optional("alpha"))
    sc.initial_alpha = as_double(*a, "scenario.alpha");
  sc.platform = parse_platform(obj.require("platform"), "scenario.platform");
  sc.profiles =
      parse_profiles(obj.require("profiles"), "scenario.profiles", base_dir);

  if (const json* gov = obj.optional("governor")) {
    Obj jg(*gov, "scenario.governor");
    if (const json* h = jg.optional("hysteresis_pct"))
      sc.tunables.hysteresis_pct =
          as_double(*h, "scenario.governor.hysteresis_pct");
    if (const json* d = jg.optional("designated_device"))
      sc.tunables.designated_device =
          as_string(*d, "scenario.governor.designated_device");
    if (const json* s = jg.optional("fixed_subnet"))
      sc.tunables.fixed_subnet =
          as_string(*s, "scenario.governor.fixed_subnet");
    if (const json* p = jg.optional("power_budget_w"))
      sc.tunables.power_budget_w =
          as_double(*p, "scenario.governor.power_budget_w");
    jg.finish();
  }

  if (const json* ev = obj.optional("events"))
    sc.events = parse_events(*ev, "scenario.events");
  obj.finish();

  sc.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json_text(detail::read_text_file(path),
                                 path.parent_path(), path.stem().string());
}

GeneratorSpec generator_spec_from_json_text(std::string_view text) {
  const json j = parse_document(text, "generator spec");
  Obj obj(j, "spec");
  GeneratorSpec spec;
  spec.subnet_count = as_int(obj.require("subnets"), "spec.subnets");
  const json& jdevs = obj.require("devices");
  if (!jdevs.is_array()) throw ParseError("spec.devices: expected an array");
  for (std::size_t i = 0; i < jdevs.size(); ++i) {
    const std::string dpath = "spec.devices[" + std::to_string(i) + "]";
    Obj jd(jdevs[i], dpath);
    GeneratorDevice dev;
    dev.id = as_string(jd.require("id"), dpath + ".id");
    const json& jf = jd.require("freqs_hz");
    if (!jf.is_array()) throw ParseError(dpath + ".freqs_hz: expected an array");
    for (std::size_t k = 0; k < jf.size(); ++k)
      dev.freqs_hz.push_back(
          as_double(jf[k], dpath + ".freqs_hz[" + std::to_string(k) + "]"));
    if (const json* s = jd.optional("latency_scale"))
      dev.latency_scale = as_double(*s, dpath + ".latency_scale");
    jd.finish();
    spec.devices.push_back(std::move(dev));
  }
  if (const json* r = obj.optional("base_latency_ms"))
    spec.base_latency_ms = as_range(*r, "spec.base_latency_ms");
  if (const json* r = obj.optional("busy_power_w"))
    spec.busy_power_w = as_range(*r, "spec.busy_power_w");
  if (const json* r = obj.optional("accuracy_pct"))
    spec.accuracy_pct = as_range(*r, "spec.accuracy_pct");
  obj.finish();
  return spec;
}

GeneratorSpec load_generator_spec(const std::filesystem::path& path) {
  return generator_spec_from_json_text(detail::read_text_file(path));
}

}  // namespace govsim
