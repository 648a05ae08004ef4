#ifndef BLOCKCORR_REPORT_HPP
#define BLOCKCORR_REPORT_HPP

#include <nlohmann/json.hpp>

#include "criteria.hpp"
#include "qap.hpp"
#include "search.hpp"

namespace blockcorr {

using json = nlohmann::ordered_json;

/// Structured result documents. Field order is fixed and floats serialise
/// with shortest round-trip precision, so a document is byte-reproducible
/// from (network digest, params, seed).

json partition_to_json(const Partition& part, const Network& net);
json blockimage_to_json(const BlockImage& image);
json evaluation_to_json(const Evaluation& ev);
json solution_to_json(const Solution& sol, const Network& net);
json pool_to_json(const SolutionPool& pool, const Network& net);
json qap_to_json(const QapResult& result);

/// Envelope: {command, params, seed?, network_digest, ...payload}.
json result_document(const std::string& command, json params, const Network& net);

std::string dump_document(const json& doc);

/// Round half away from zero to 4 decimals (table convention).
double round4(double v);

} // namespace blockcorr

#endif
