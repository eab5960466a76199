// Umbrella header for everything except the HTTP service, which pulls in
// cpp-httplib and lives in pathnorm/service.hpp.
#ifndef PATHNORM_PATHNORM_HPP
#define PATHNORM_PATHNORM_HPP

#include "pathnorm/analysis.hpp"
#include "pathnorm/batch.hpp"
#include "pathnorm/csv.hpp"
#include "pathnorm/error.hpp"
#include "pathnorm/ingest.hpp"
#include "pathnorm/matching.hpp"
#include "pathnorm/normalizer.hpp"
#include "pathnorm/partition.hpp"
#include "pathnorm/pathway.hpp"
#include "pathnorm/preprocess.hpp"
#include "pathnorm/sbml.hpp"
#include "pathnorm/species.hpp"
#include "pathnorm/verify.hpp"

#endif  // PATHNORM_PATHNORM_HPP
