// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#include "su3twa/su3twa.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "su3twa/config.hpp"
#include "su3twa/error.hpp"

struct su3twa_config {
  su3twa::RunConfig cfg;
};

struct su3twa_result {
  su3twa::RunResult result;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

su3twa_status status_for(su3twa::ErrorCode code) {
  switch (code) {
    case su3twa::ErrorCode::Config:
    case su3twa::ErrorCode::CapExceeded:
      return SU3TWA_ERR_CONFIG;
    case su3twa::ErrorCode::Validation:
      return SU3TWA_ERR_VALIDATION;
    default:
      return SU3TWA_ERR_RUNTIME;
  }
}

template <class F>
su3twa_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const su3twa::Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SU3TWA_ERR_RUNTIME;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SU3TWA_ERR_RUNTIME;
  }
}

su3twa_status invalid(const char* what) {
  g_last_error = what;
  return SU3TWA_ERR_INVALID_ARGUMENT;
}

void copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
}

bool looks_like_csv(const std::string& text) {
  return text.find("# config: ") != std::string::npos;
}

}  // namespace

extern "C" {

const char* su3twa_version(void) { return SU3TWA_VERSION; }

const char* su3twa_last_error(void) { return g_last_error.c_str(); }

su3twa_status su3twa_config_parse(const char* text, su3twa_config** out) {
  if (!text || !out) return invalid("null argument");
  return guarded([&] {
    *out = new su3twa_config{su3twa::parse_config(text)};
    return SU3TWA_OK;
  });
}

su3twa_status su3twa_config_load(const char* path, su3twa_config** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    const std::string text = su3twa::read_text_file(path);
    *out = new su3twa_config{looks_like_csv(text) ? su3twa::config_from_csv(text)
                                                  : su3twa::parse_config(text)};
    return SU3TWA_OK;
  });
}

su3twa_status su3twa_config_new(const char* experiment, su3twa_config** out) {
  if (!experiment || !out) return invalid("null argument");
  return guarded([&] {
    const auto e = su3twa::experiment_from_string(experiment);
    if (!e) su3twa::fail(su3twa::ErrorCode::Config, std::string("unknown experiment '") + experiment + "'");
    su3twa::RunConfig cfg;
    cfg.experiment = *e;
    *out = new su3twa_config{std::move(cfg)};
    return SU3TWA_OK;
  });
}

su3twa_status su3twa_config_set(su3twa_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return invalid("null argument");
  return guarded([&] {
    su3twa::RunConfig copy = cfg->cfg;
    su3twa::set_config_key(copy, key, value);
    cfg->cfg = std::move(copy);
    return SU3TWA_OK;
  });
}

su3twa_status su3twa_config_render(const su3twa_config* cfg, char* buf, size_t cap,
                                   size_t* needed) {
  if (!cfg) return invalid("null argument");
  return guarded([&] {
    copy_out(su3twa::render_config(cfg->cfg), buf, cap, needed);
    return SU3TWA_OK;
  });
}

const char* su3twa_config_output(const su3twa_config* cfg) {
  return cfg ? cfg->cfg.output.c_str() : "";
}

void su3twa_config_free(su3twa_config* cfg) { delete cfg; }

su3twa_status su3twa_run(const su3twa_config* cfg, su3twa_result** out) {
  if (!cfg || !out) return invalid("null argument");
  return guarded([&] {
    auto* r = new su3twa_result{su3twa::run_experiment(cfg->cfg), {}};
    r->csv = su3twa::render_csv(r->result);
    *out = r;
    return SU3TWA_OK;
  });
}

size_t su3twa_result_num_times(const su3twa_result* r) {
  return r ? r->result.times.size() : 0;
}

size_t su3twa_result_num_series(const su3twa_result* r) {
  return r ? r->result.names.size() : 0;
}

const char* su3twa_result_series_name(const su3twa_result* r, size_t series) {
  if (!r || series >= r->result.names.size()) return nullptr;
  return r->result.names[series].c_str();
}

su3twa_status su3twa_result_time(const su3twa_result* r, size_t row, double* out) {
  if (!r || !out) return invalid("null argument");
  if (row >= r->result.times.size()) return invalid("row out of range");
  *out = r->result.times[row];
  return SU3TWA_OK;
}

su3twa_status su3twa_result_mean(const su3twa_result* r, size_t series, size_t row,
                                 double* out) {
  if (!r || !out) return invalid("null argument");
  if (series >= r->result.names.size() || row >= r->result.times.size())
    return invalid("index out of range");
  *out = r->result.mean[series][row];
  return SU3TWA_OK;
}

su3twa_status su3twa_result_sem(const su3twa_result* r, size_t series, size_t row,
                                double* out) {
  if (!r || !out) return invalid("null argument");
  if (series >= r->result.names.size() || row >= r->result.times.size())
    return invalid("index out of range");
  *out = r->result.sem[series][row];
  return SU3TWA_OK;
}

const char* su3twa_result_csv(const su3twa_result* r) { return r ? r->csv.c_str() : ""; }

su3twa_status su3twa_result_write_csv(const su3twa_result* r, const char* path) {
  if (!r || !path) return invalid("null argument");
  return guarded([&] {
    su3twa::write_text_file(path, r->csv);
    return SU3TWA_OK;
  });
}

void su3twa_result_free(su3twa_result* r) { delete r; }

su3twa_status su3twa_validate_algebra(char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    const su3twa::AlgebraReport report = su3twa::validate_algebra();
    copy_out(report.text, buf, cap, needed);
    if (report.exit_code != 0) {
      g_last_error = "structure constants disagree with the tabulated f values";
      return SU3TWA_ERR_VALIDATION;
    }
    return SU3TWA_OK;
  });
}

}  // extern "C"
