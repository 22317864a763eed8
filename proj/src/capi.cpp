#include "tgtsp.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "tgtsp/errors.hpp"
#include "tgtsp/export.hpp"
#include "tgtsp/pipeline.hpp"
#include "tgtsp/scenario.hpp"
#include "tgtsp/trajectory.hpp"
#include "tgtsp/walks.hpp"

using namespace tgtsp;

struct tg_scenario {
  Scenario scenario;
  std::string source_hash;
};

struct tg_trajectory {
  Trajectory trajectory;
};

struct tg_run {
  PipelineOptions options;
  PipelineResult result;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** errmsg, const std::string& what) {
  if (errmsg) *errmsg = dup_string(what);
}

tg_status status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::parse: return TG_ERR_PARSE;
    case ErrorCode::validation: return TG_ERR_INVALID;
    case ErrorCode::unsupported: return TG_ERR_UNSUPPORTED;
    case ErrorCode::io: return TG_ERR_IO;
    case ErrorCode::internal: return TG_ERR_INTERNAL;
  }
  return TG_ERR_INTERNAL;
}

template <typename Fn>
tg_status guarded(char** errmsg, Fn&& fn) {
  try {
    fn();
    return TG_OK;
  } catch (const Error& e) {
    set_err(errmsg, e.what());
    return status_of(e);
  } catch (const std::bad_alloc&) {
    set_err(errmsg, "out of memory");
    return TG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return TG_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

void tg_solve_options_defaults(tg_solve_options* opts) {
  if (!opts) return;
  SolveOptions d;
  opts->nodes = d.nodes;
  opts->multistart = d.multistart;
  opts->rng_seed = d.rng_seed;
  opts->max_outer = d.max_outer;
  opts->max_inner = d.max_inner;
  opts->tol_feas = d.tol_feas;
  opts->tol_grad = d.tol_grad;
  opts->penalty_init = d.penalty_init;
  opts->penalty_growth = d.penalty_growth;
  opts->zone_margin = d.zone_margin;
  opts->eps_dwell = d.eps_dwell;
  opts->kappa = d.kappa;
  opts->dwell_margin = d.dwell_margin;
  opts->quad_refine = d.quad_refine;
  opts->eps_schedule = nullptr;
  opts->eps_schedule_len = 0;
  opts->problem_override = nullptr;
  opts->scenario_path = nullptr;
}

tg_status tg_scenario_parse(const char* json_text, tg_scenario** out,
                            char** errmsg) {
  if (!json_text || !out) {
    set_err(errmsg, "null argument");
    return TG_ERR_INVALID;
  }
  *out = nullptr;
  return guarded(errmsg, [&]() {
    auto holder = std::make_unique<tg_scenario>();
    holder->scenario = parse_scenario(json_text);
    holder->source_hash = content_hash(json_text);
    *out = holder.release();
  });
}

tg_status tg_scenario_serialize(const tg_scenario* s, char** json_out) {
  if (!s || !json_out) return TG_ERR_INVALID;
  return guarded(nullptr,
                 [&]() { *json_out = dup_string(serialize_scenario(s->scenario)); });
}

int tg_scenario_city_count(const tg_scenario* s) {
  return s ? static_cast<int>(s->scenario.cities.size()) : 0;
}

void tg_scenario_free(tg_scenario* s) { delete s; }

tg_status tg_trajectory_parse(const char* json_text, tg_trajectory** out,
                              char** errmsg) {
  if (!json_text || !out) {
    set_err(errmsg, "null argument");
    return TG_ERR_INVALID;
  }
  *out = nullptr;
  return guarded(errmsg, [&]() {
    auto holder = std::make_unique<tg_trajectory>();
    holder->trajectory = parse_trajectory(json_text);
    *out = holder.release();
  });
}

tg_status tg_trajectory_serialize(const tg_trajectory* t, char** json_out) {
  if (!t || !json_out) return TG_ERR_INVALID;
  return guarded(nullptr, [&]() {
    *json_out = dup_string(serialize_trajectory(t->trajectory));
  });
}

int tg_trajectory_node_count(const tg_trajectory* t) {
  return t ? t->trajectory.node_count() : 0;
}

void tg_trajectory_free(tg_trajectory* t) { delete t; }

tg_status tg_solve(const tg_scenario* s, const tg_solve_options* opts,
                   tg_run** out, char** errmsg) {
  if (!s || !out) {
    set_err(errmsg, "null argument");
    return TG_ERR_INVALID;
  }
  *out = nullptr;
  return guarded(errmsg, [&]() {
    tg_solve_options defaults;
    tg_solve_options_defaults(&defaults);
    const tg_solve_options& o = opts ? *opts : defaults;

    Scenario scenario = s->scenario;
    if (o.problem_override && *o.problem_override)
      scenario.problem_kind = problem_kind_from_string(o.problem_override);

    PipelineOptions po;
    po.scenario_path = o.scenario_path ? o.scenario_path : "";
    po.scenario_hash = s->source_hash;
    SolveOptions& so = po.solve;
    so.nodes = o.nodes;
    so.multistart = o.multistart;
    so.rng_seed = o.rng_seed;
    so.max_outer = o.max_outer;
    so.max_inner = o.max_inner;
    so.tol_feas = o.tol_feas;
    so.tol_grad = o.tol_grad;
    so.penalty_init = o.penalty_init;
    so.penalty_growth = o.penalty_growth;
    so.zone_margin = o.zone_margin;
    so.eps_dwell = o.eps_dwell;
    so.kappa = o.kappa;
    so.dwell_margin = o.dwell_margin;
    so.quad_refine = o.quad_refine;
    if (o.eps_schedule && o.eps_schedule_len > 0)
      so.eps_schedule.assign(o.eps_schedule,
                             o.eps_schedule + o.eps_schedule_len);

    auto holder = std::make_unique<tg_run>();
    holder->options = po;
    holder->result = run_pipeline(scenario, po);
    *out = holder.release();
  });
}

int tg_run_feasible(const tg_run* r) {
  return r && r->result.feasible ? 1 : 0;
}

tg_status tg_run_trajectory(const tg_run* r, tg_trajectory** out) {
  if (!r || !out) return TG_ERR_INVALID;
  *out = new (std::nothrow) tg_trajectory{r->result.trajectory};
  return *out ? TG_OK : TG_ERR_INTERNAL;
}

tg_status tg_run_report_json(const tg_run* r, char** json_out) {
  if (!r || !json_out) return TG_ERR_INVALID;
  return guarded(nullptr, [&]() {
    *json_out = dup_string(serialize_report(r->result.report));
  });
}

tg_status tg_run_manifest_json(const tg_run* r, char** json_out) {
  if (!r || !json_out) return TG_ERR_INVALID;
  return guarded(nullptr, [&]() {
    *json_out = dup_string(manifest_json(r->options, r->result));
  });
}

void tg_run_free(tg_run* r) { delete r; }

tg_status tg_verify(const tg_scenario* s, const tg_trajectory* t,
                    char** report_json, int* passes, char** errmsg) {
  if (!s || !t) {
    set_err(errmsg, "null argument");
    return TG_ERR_INVALID;
  }
  return guarded(errmsg, [&]() {
    const TourReport report = tour_report(t->trajectory, s->scenario);
    if (report_json) *report_json = dup_string(serialize_report(report));
    if (passes) *passes = report.passes(s->scenario.problem_kind) ? 1 : 0;
  });
}

tg_status tg_export_csv(const tg_scenario*, const tg_trajectory* t, char** out,
                        char** errmsg) {
  if (!t || !out) {
    set_err(errmsg, "null argument");
    return TG_ERR_INVALID;
  }
  return guarded(errmsg,
                 [&]() { *out = dup_string(export_csv(t->trajectory)); });
}

tg_status tg_export_svg(const tg_scenario* s, const tg_trajectory* t,
                        char** out, char** errmsg) {
  if (!s || !t || !out) {
    set_err(errmsg, "null argument");
    return TG_ERR_INVALID;
  }
  return guarded(errmsg, [&]() {
    *out = dup_string(export_svg(s->scenario, t->trajectory));
  });
}

void tg_string_free(char* s) { std::free(s); }

const char* tg_version(void) { return "0.1.0"; }

}  // extern "C"
