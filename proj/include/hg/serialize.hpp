#pragma once

#include "hg/oracle.hpp"
#include "hg/pairing_sim.hpp"
#include "hg/solver.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace hg {

// trajectory CSV, header `x,phase_hint,y1,...,yd,z1,...,zk,frac`
std::string sim_trajectory_csv(const SimResult& r);

// summary JSON {process,k,d,n,reps,mean,std,seeds,values}
nlohmann::json summary_json(const ReplicateSummary& s);

// ODE trajectory CSV, header `x,phase,y0,...,yd,z1,...,zk,alpha,tau`;
// z columns (and y0) are left empty for the matching system
std::string ode_trajectory_csv(const SolveResult& r);

// {process,k,d,mode,value,phases:[{p,x_start,x_end,cause}],solver:{h,eps_end,eps_evt}}
nlohmann::json solve_json(const SolveResult& r);

nlohmann::json exact_json(const ExactResult& r, ProcessKind kind);

} // namespace hg
