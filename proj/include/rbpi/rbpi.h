// Copyright 2026 The RBPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef RBPI_RBPI_H_
#define RBPI_RBPI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RBPI_BUILDING_LIBRARY)
#define RBPI_API __attribute__((visibility("default")))
#else
#define RBPI_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rbpi_status {
  RBPI_OK = 0,
  RBPI_INVALID_ARGUMENT = 1,
  RBPI_PARSE = 2,
  RBPI_VALIDATION = 3,
  RBPI_NO_ROUTE = 4,
  RBPI_LENGTH = 5,
  RBPI_FIELD = 6,
  RBPI_CHECKSUM = 7,
  RBPI_IO = 8,
  RBPI_INTERNAL = 9
} rbpi_status;

/* Message of the last failed call on this thread; never NULL. */
RBPI_API const char* rbpi_last_error(void);
RBPI_API const char* rbpi_version(void);
RBPI_API const char* rbpi_status_name(rbpi_status status);

/* ---- Headers ---------------------------------------------------------- */

#define RBPI_DATAGRAM_SIZE 16
#define RBPI_SEGMENT_SIZE 24

#define RBPI_FLAG_FIN (1u << 0)
#define RBPI_FLAG_SYN (1u << 1)
#define RBPI_FLAG_RST (1u << 2)
#define RBPI_FLAG_PSH (1u << 3)
#define RBPI_FLAG_ACK (1u << 4)
#define RBPI_FLAG_URG (1u << 5)
#define RBPI_FLAG_ECE (1u << 6)
#define RBPI_FLAG_CWR (1u << 7)
#define RBPI_FLAG_NS (1u << 8)

typedef struct rbpi_datagram {
  uint8_t version;
  uint8_t traffic_class;
  uint32_t flow_label;
  uint16_t payload_length;
  uint8_t next_header;
  uint8_t hop_limit;
  uint32_t source;
  uint32_t destination;
} rbpi_datagram;

typedef struct rbpi_segment {
  uint16_t source_port;
  uint16_t destination_port;
  uint32_t sequence_number;
  uint32_t acknowledgement_number;
  uint8_t data_offset;
  uint8_t reserved;
  uint16_t flags; /* RBPI_FLAG_* */
  uint16_t window_size;
  uint16_t checksum; /* computed on encode */
  uint16_t urgent_pointer;
  uint32_t options;
} rbpi_segment;

RBPI_API rbpi_status rbpi_encode_datagram(const rbpi_datagram* header, uint8_t out[RBPI_DATAGRAM_SIZE]);
RBPI_API rbpi_status rbpi_decode_datagram(const uint8_t* bytes, size_t length, rbpi_datagram* out);
RBPI_API rbpi_status rbpi_encode_segment(const rbpi_segment* header, uint8_t out[RBPI_SEGMENT_SIZE]);
RBPI_API rbpi_status rbpi_decode_segment(const uint8_t* bytes, size_t length, rbpi_segment* out);
RBPI_API uint16_t rbpi_checksum16(const uint8_t* bytes, size_t length);

/* Parses "domain:local" or a decimal integer. */
RBPI_API rbpi_status rbpi_parse_address(const char* text, uint32_t* out);

typedef enum rbpi_strategy { RBPI_STRATEGY_RIP = 0, RBPI_STRATEGY_OSPF = 1, RBPI_STRATEGY_BGP = 2 } rbpi_strategy;

RBPI_API rbpi_status rbpi_parse_strategy(const char* text, rbpi_strategy* out);
RBPI_API const char* rbpi_strategy_name(rbpi_strategy strategy);

/* ---- Scenarios -------------------------------------------------------- */

typedef struct rbpi_scenario rbpi_scenario;

/* Both succeed for syntactically valid input; validation problems are listed
   through the accessors below. */
RBPI_API rbpi_status rbpi_scenario_load(const char* path, rbpi_scenario** out);
RBPI_API rbpi_status rbpi_scenario_parse(const char* text, size_t length, rbpi_scenario** out);
RBPI_API void rbpi_scenario_free(rbpi_scenario* scenario);

RBPI_API size_t rbpi_scenario_violation_count(const rbpi_scenario* scenario);
RBPI_API const char* rbpi_scenario_violation_code(const rbpi_scenario* scenario, size_t index);
RBPI_API const char* rbpi_scenario_violation_message(const rbpi_scenario* scenario, size_t index);
RBPI_API size_t rbpi_scenario_warning_count(const rbpi_scenario* scenario);
RBPI_API const char* rbpi_scenario_warning_code(const rbpi_scenario* scenario, size_t index);
RBPI_API const char* rbpi_scenario_warning_message(const rbpi_scenario* scenario, size_t index);
RBPI_API uint64_t rbpi_scenario_seed(const rbpi_scenario* scenario);
RBPI_API rbpi_strategy rbpi_scenario_strategy(const rbpi_scenario* scenario);
RBPI_API const char* rbpi_scenario_name(const rbpi_scenario* scenario);
RBPI_API const char* rbpi_scenario_digest(const rbpi_scenario* scenario);

/* ---- Runs ------------------------------------------------------------- */

typedef struct rbpi_run_options {
  uint64_t seed;
  int use_scenario_seed; /* nonzero: ignore `seed` */
  double until_hours;    /* <= 0: scenario end time */
} rbpi_run_options;

typedef enum rbpi_report_format { RBPI_FORMAT_OBJECT = 0, RBPI_FORMAT_TABLE = 1 } rbpi_report_format;

typedef struct rbpi_report rbpi_report;

/* Fails with RBPI_VALIDATION when the scenario has violations. */
RBPI_API rbpi_status rbpi_run(const rbpi_scenario* scenario, const rbpi_run_options* options, rbpi_report** out);
RBPI_API void rbpi_report_free(rbpi_report* report);
/* Rendered report; the strings live as long as the report. */
RBPI_API const char* rbpi_report_render(const rbpi_report* report, rbpi_report_format format);
RBPI_API const char* rbpi_report_body(const rbpi_report* report);
RBPI_API const char* rbpi_report_summary(const rbpi_report* report);
RBPI_API const char* rbpi_report_digest(const rbpi_report* report);
RBPI_API double rbpi_report_wall_clock(const rbpi_report* report);
RBPI_API int rbpi_report_ledger_balanced(const rbpi_report* report);

/* ---- Route queries ---------------------------------------------------- */

typedef struct rbpi_route rbpi_route;

/* RBPI_NO_ROUTE when the destination is unknown or unreachable. */
RBPI_API rbpi_status rbpi_route_query(const rbpi_scenario* scenario, uint32_t source, uint32_t destination,
                                      int64_t payload_kg, rbpi_strategy strategy, rbpi_route** out);
RBPI_API void rbpi_route_free(rbpi_route* route);
RBPI_API size_t rbpi_route_length(const rbpi_route* route);
RBPI_API uint32_t rbpi_route_node(const rbpi_route* route, size_t index);
RBPI_API uint32_t rbpi_route_hop_count(const rbpi_route* route);
RBPI_API int64_t rbpi_route_min_free_capacity(const rbpi_route* route);
RBPI_API int rbpi_route_capacity_shortfall(const rbpi_route* route);

#ifdef __cplusplus
}
#endif

#endif /* RBPI_RBPI_H_ */
