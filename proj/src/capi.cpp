// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/rmtlab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "rmtlab/config.hpp"
#include "rmtlab/ds.hpp"
#include "rmtlab/error.hpp"
#include "rmtlab/experiments.hpp"

struct rmt_config {
  rmt::ExperimentConfig value;
};

struct rmt_report {
  rmt::ExperimentReport value;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
rmt_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return RMT_OK;
  } catch (const rmt::Error& e) {
    last_error = e.what();
    return static_cast<rmt_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RMT_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RMT_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown exception";
    return RMT_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) rmt::fail(rmt::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* rmt_version(void) { return "0.1.0"; }

const char* rmt_status_string(rmt_status status) {
  if (status < RMT_OK || status > RMT_INTERNAL_ERROR) return "UnknownStatus";
  return rmt::to_string(static_cast<rmt::ErrorCode>(status)).data();
}

const char* rmt_last_error(void) { return last_error.c_str(); }

void rmt_string_free(char* text) { std::free(text); }

size_t rmt_experiment_count(void) { return rmt::experiment_names().size(); }

const char* rmt_experiment_name(size_t index) {
  const auto& names = rmt::experiment_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

size_t rmt_config_key_count(void) { return rmt::config_keys().size(); }

const char* rmt_config_key_name(size_t index) {
  const auto& keys = rmt::config_keys();
  return index < keys.size() ? keys[index].c_str() : nullptr;
}

rmt_status rmt_config_create(const char* experiment, rmt_config** out) {
  return guarded([&] {
    need(experiment, "experiment");
    need(out, "out");
    *out = nullptr;
    *out = new rmt_config{rmt::default_config(experiment)};
  });
}

void rmt_config_destroy(rmt_config* config) { delete config; }

rmt_status rmt_config_set(rmt_config* config, const char* key, const char* value) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(value, "value");
    rmt::apply_setting(config->value, key, value);
  });
}

rmt_status rmt_config_load_file(rmt_config* config, const char* path) {
  return guarded([&] {
    need(config, "config");
    need(path, "path");
    rmt::load_config_file(config->value, path);
  });
}

rmt_status rmt_config_echo(const rmt_config* config, char** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    std::string text;
    for (const auto& [k, v] : rmt::config_echo(config->value)) text += k + "=" + v + "\n";
    *out = copy_string(text);
  });
}

rmt_status rmt_run(const rmt_config* config, rmt_report** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    *out = nullptr;
    auto report = rmt::run_experiment(config->value);
    *out = new rmt_report{std::move(report)};
  });
}

void rmt_report_destroy(rmt_report* report) { delete report; }

int rmt_report_passed(const rmt_report* report) {
  return report != nullptr && report->value.passed() ? 1 : 0;
}

size_t rmt_report_criterion_count(const rmt_report* report) {
  return report == nullptr ? 0 : report->value.criteria.size();
}

rmt_status rmt_report_criterion(const rmt_report* report, size_t index, rmt_criterion* out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    const auto& list = report->value.criteria;
    if (index >= list.size()) {
      rmt::fail(rmt::ErrorCode::kInvalidArgument, "criterion index out of range");
    }
    const auto& c = list[index];
    *out = rmt_criterion{c.name.c_str(), c.op.c_str(), c.value, c.threshold, c.threshold_hi,
                         c.passed ? 1 : 0};
  });
}

rmt_status rmt_report_statistic(const rmt_report* report, const char* name, double* value) {
  return guarded([&] {
    need(report, "report");
    need(name, "name");
    need(value, "value");
    *value = report->value.statistic(name);
  });
}

size_t rmt_report_note_count(const rmt_report* report) {
  return report == nullptr ? 0 : report->value.notes.size();
}

const char* rmt_report_note(const rmt_report* report, size_t index) {
  if (report == nullptr || index >= report->value.notes.size()) return nullptr;
  return report->value.notes[index].c_str();
}

double rmt_report_elapsed(const rmt_report* report) {
  return report == nullptr ? 0.0 : report->value.elapsed_seconds;
}

rmt_status rmt_report_json(const rmt_report* report, int include_runtime, char** out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    *out = copy_string(report->value.to_json(include_runtime != 0));
  });
}

rmt_status rmt_report_write(rmt_report* report, const char* dir, const char* format) {
  return guarded([&] {
    need(report, "report");
    need(dir, "dir");
    need(format, "format");
    rmt::write_report(report->value, dir, format);
  });
}

rmt_status rmt_ds_fixed_point(const double* atoms, size_t count, double w_re, double w_im,
                              const char* form, double damping, double tol, int max_iter,
                              double* m_re, double* m_im, int* iterations) {
  return guarded([&] {
    need(atoms, "atoms");
    need(form, "form");
    need(m_re, "m_re");
    need(m_im, "m_im");
    rmt::DsParams params;
    params.form = rmt::parse_ds_form(form);
    params.damping = damping;
    params.tol = tol;
    params.max_iter = max_iter;
    const rmt::SingularMeasure nu(std::vector<double>(atoms, atoms + count));
    const auto sol = rmt::ds_fixed_point(nu, {w_re, w_im}, params);
    *m_re = sol.m.real();
    *m_im = sol.m.imag();
    if (iterations != nullptr) *iterations = sol.iterations;
  });
}

}  // extern "C"
