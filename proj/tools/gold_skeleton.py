#!/usr/bin/env python3
# Copyright 2026 The Guideline Structure Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Starts a gold file from the pipeline's tree for an annotator to correct.

Usage: gold_skeleton.py STRUCTURE_BINARY SOURCE.txt [--reparent ID=PARENT ...]

Writes SOURCE.gold.json next to the source. Machine fields (decisions,
fired rule, confidence) are dropped; --reparent records an annotator's
correction, with an empty PARENT meaning the root.
"""

import argparse
import json
import pathlib
import subprocess


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("binary")
    ap.add_argument("source", type=pathlib.Path)
    ap.add_argument("--reparent", action="append", default=[])
    ap.add_argument("--annotator", default="annotator")
    args = ap.parse_args()

    out = subprocess.run([args.binary, "tree", "--in", str(args.source)],
                         check=True, capture_output=True, text=True).stdout
    tree = json.loads(out)
    by_id = {n["id"]: n for n in tree["nodes"]}
    for node in tree["nodes"]:
        node.update(fired_rule=None, confidence=None, explanation=[],
                    accepted=True, revised_by=args.annotator)
    for edit in args.reparent:
        target, parent = edit.split("=", 1)
        by_id[target]["parent"] = parent or None
    tree["source"] = args.source.name
    gold = args.source.with_name(args.source.stem + ".gold.json")
    gold.write_text(json.dumps(tree, ensure_ascii=False, indent=2) + "\n",
                    encoding="utf-8")


if __name__ == "__main__":
    main()
