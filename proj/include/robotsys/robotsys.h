#ifndef ROBOTSYS_H
#define ROBOTSYS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The numeric values of RS_OK .. RS_RESOURCE double as CLI exit codes. */
typedef enum rs_status {
  RS_OK = 0,
  RS_FAIL = 1,           /* a check ran and did not hold */
  RS_PARSE = 2,          /* malformed text input or bad argument */
  RS_RESOURCE = 3,       /* a budget was exceeded */
  RS_PRECONDITION = 4,   /* operation not applicable to its input */
  RS_NONDETERMINISTIC = 5, /* simulated system took a nondeterministic step */
  RS_INTERNAL = 6        /* construction broke its own invariant */
} rs_status;

typedef struct rs_graph rs_graph;
typedef struct rs_function rs_function;
typedef struct rs_space rs_space;
typedef struct rs_cgraph rs_cgraph;
typedef struct rs_compiled rs_compiled;
typedef struct rs_certificate rs_certificate;

/* Message of the last failing call on this thread; never NULL. */
const char* rs_last_error(void);
const char* rs_version(void);
/* Frees strings returned through char** out-parameters. */
void rs_string_free(char* s);

/* Graphs ------------------------------------------------------------------ */

rs_status rs_graph_parse(const char* text, rs_graph** out);
/* family is one of "OP", "UP", "OR", "UR". */
rs_status rs_graph_family(const char* family, size_t n, rs_graph** out);
rs_status rs_graph_format(const rs_graph* g, char** text);
size_t rs_graph_vertex_count(const rs_graph* g);
size_t rs_graph_edge_count(const rs_graph* g);
rs_status rs_graph_automorphism_count(const rs_graph* g, size_t* count);
/* SIZE_MAX for forests. */
rs_status rs_graph_girth(const rs_graph* g, size_t* girth);
/* Number of vertex classes, and edges of a longest simple quotient path capped at bound. */
rs_status rs_graph_quotient(const rs_graph* g, size_t bound, size_t* classes, size_t* longest_path);
void rs_graph_free(rs_graph* g);

/* Functions --------------------------------------------------------------- */

rs_status rs_function_parse(const char* text, rs_function** out);
rs_status rs_function_from_table(const uint32_t* table, size_t n, rs_function** out);
rs_status rs_function_format(const rs_function* f, char** text);
size_t rs_function_size(const rs_function* f);
/* The network induced by f. */
rs_status rs_function_network(const rs_function* f, rs_graph** out);
void rs_function_free(rs_function* f);

/* Configuration spaces ---------------------------------------------------- */

rs_status rs_space_create(const rs_graph* g, size_t robots, rs_space** out);
/* Number of configurations by enumeration. */
rs_status rs_space_count(const rs_space* s, uint64_t* count);
/* One canonical configuration per line, as "a,b,...". */
rs_status rs_space_list(const rs_space* s, char** text);
void rs_space_free(rs_space* s);

/* Closed-form |C| for a family, as a decimal string. */
rs_status rs_closed_form_count(const char* family, uint64_t n, uint64_t robots, char** decimal);

/* Configuration graphs ---------------------------------------------------- */

rs_status rs_cgraph_build(const rs_space* s, rs_cgraph** out);
size_t rs_cgraph_node_count(const rs_cgraph* c);
/* Edges without self-loops; deterministic ones when deterministic_only != 0. */
size_t rs_cgraph_edge_count(const rs_cgraph* c, int deterministic_only);
int rs_cgraph_deterministic(const rs_cgraph* c);
rs_status rs_cgraph_dot(const rs_cgraph* c, int self_loops, int deterministic_only, char** text);
/* Structure report (grid for OP(2n,2), path union, long cycles) as key/value lines. */
rs_status rs_cgraph_check(const rs_space* s, const rs_cgraph* c, size_t cycle_length, char** report);
void rs_cgraph_free(rs_cgraph* c);

/* Compilers --------------------------------------------------------------- */

typedef enum rs_target {
  RS_TARGET_COMPLETE = 0,
  RS_TARGET_OP = 1,
  RS_TARGET_OR = 2,
  RS_TARGET_UP = 3,
  RS_TARGET_UR = 4,
  RS_TARGET_MINSIZE = 5,
  RS_TARGET_QUOTIENT_PATH = 6, /* host graph, 2 robots */
  RS_TARGET_GIRTH = 7          /* host graph, 3 robots */
} rs_target;

/* host is required for RS_TARGET_QUOTIENT_PATH and RS_TARGET_GIRTH, ignored otherwise. */
rs_status rs_compile(const rs_function* f, rs_target target, const rs_graph* host, uint64_t seed, rs_compiled** out);
size_t rs_compiled_vertex_count(const rs_compiled* c);
size_t rs_compiled_robots(const rs_compiled* c);
size_t rs_compiled_phi_size(const rs_compiled* c);
/* Copies of the system graph and the simulated system's graph. */
rs_status rs_compiled_graph(const rs_compiled* c, rs_graph** out);
rs_status rs_compiled_target_graph(const rs_compiled* c, rs_graph** out);
rs_status rs_compiled_description(const rs_compiled* c, char** text);
rs_status rs_compiled_save(const rs_compiled* c, const char* dir);
rs_status rs_compiled_load(const char* dir, rs_compiled** out);
void rs_compiled_free(rs_compiled* c);

/* |V|! >= n. */
int rs_check_opt2(size_t system_vertices, size_t n);

/* Verification ------------------------------------------------------------ */

/* Checks c against the single-robot system computing f. RS_OK means the check
   ran; the verdict is in the certificate. */
rs_status rs_verify_function(const rs_compiled* c, const rs_function* f, rs_certificate** out);
/* Checks c against the simulated system stored with it. */
rs_status rs_verify(const rs_compiled* c, rs_certificate** out);
int rs_certificate_pass(const rs_certificate* cert);
rs_status rs_certificate_format(const rs_certificate* cert, char** text);
void rs_certificate_free(rs_certificate* cert);

#ifdef __cplusplus
}
#endif

#endif
