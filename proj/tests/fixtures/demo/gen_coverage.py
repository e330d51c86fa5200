#!/usr/bin/env python3
"""Generates demo coverage: per subprogram one "empty" test, three
min/mid/max tests and a few basis-path tests, mimicking auto-generated unit
test suites. Coverage of a non-empty test is the callee closure of the
subprogram under test, following the call graph below (which mirrors src/).

Usage: gen_coverage.py > coverage.json
"""
import json
import sys

CALLS = {
    "ada_words.is_delimiter": [],
    "ada_words.is_separator": [],
    "ada_words.is_letter": [],
    "ada_words.is_digit": [],
    "ada_words.is_reserved": [],
    "string_utils.to_upper#1": [],
    "string_utils.to_upper#2": ["string_utils.to_upper#1"],
    "string_utils.trim": [],
    "string_utils.index_of": [],
    "string_utils.starts_with": [],
    "line_buffer.append": ["string_utils.trim"],
    "line_buffer.clear": [],
    "line_buffer.length": [],
    "line_buffer.contents": [],
    "line_buffer.is_empty": ["line_buffer.length"],
    "arg_parser.count_words": ["ada_words.is_separator"],
    "arg_parser.nth_word": ["ada_words.is_separator"],
    "arg_parser.has_flag": ["arg_parser.count_words", "arg_parser.nth_word",
                            "string_utils.starts_with"],
    "arg_parser.parse_int": ["string_utils.trim", "ada_words.is_digit"],
    "conditions.signal": [],
    "conditions.wait_all": [],
    "conditions.reset": [],
    "conditions.pending": [],
    "forker.spawn": [],
    "forker.wait_for": ["conditions.wait_all"],
    "forker.status_image": [],
    "forker.kill": ["conditions.signal"],
    "word_counter.count": ["line_buffer.contents", "ada_words.is_letter",
                           "ada_words.is_digit"],
    "word_counter.longest": ["line_buffer.contents", "ada_words.is_letter"],
    "word_counter.frequency": ["line_buffer.contents"],
    "word_counter.reset_counts": [],
    "text_stats.average_length": ["word_counter.count", "line_buffer.length"],
    "text_stats.max_line": ["line_buffer.length"],
    "text_stats.summary": ["word_counter.longest", "string_utils.to_upper#2",
                           "string_utils.trim"],
    "text_stats.ratio": [],
    "report_writer.header": [],
    "report_writer.line": [],
    "report_writer.footer": ["report_writer.format_count"],
    "report_writer.write_all": ["report_writer.header", "line_buffer.append",
                                "arg_parser.has_flag", "report_writer.line",
                                "text_stats.summary", "forker.spawn",
                                "forker.status_image", "report_writer.footer",
                                "arg_parser.count_words"],
    "report_writer.format_count": [],
}


def closure(sub):
    seen, work = set(), [sub]
    while work:
        s = work.pop()
        if s not in seen:
            seen.add(s)
            work.extend(CALLS[s])
    return sorted(seen)


def main():
    tests = {}
    for sub in sorted(CALLS):
        tests[f"{sub}.empty"] = [sub]
        for level in ("min", "mid", "max"):
            tests[f"{sub}.mmm_{level}"] = closure(sub)
        for k in range(1, 2 + len(sub) % 3):
            tests[f"{sub}.basis_{k}"] = closure(sub)
    json.dump({"tests": tests}, sys.stdout, indent=2)
    sys.stdout.write("\n")

    hits = sum(1 for s in CALLS for cov in tests.values() if s in cov)
    total = len(tests) * len(CALLS)
    print(f"tests={len(tests)} subprograms={len(CALLS)} selected={hits} "
          f"retest_all={total} ratio={1 - hits / total:.6f}", file=sys.stderr)


if __name__ == "__main__":
    main()
