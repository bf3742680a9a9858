#!/usr/bin/env python3
# Copyright 2026 The morphdec Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/korean/phonemes.tsv and data/korean/inventory.tsv."""
import os
import sys

VOWELS = ["a", "ay", "ya", "yay", "e", "ey", "ye", "yey", "o", "wa", "way",
          "oy", "yo", "wu", "we", "wey", "wi", "yu", "u", "uy", "i"]
ONSETS = ["k", "kk", "n", "t", "tt", "l", "m", "p", "pp", "s", "ss", "c",
          "cc", "ch", "kh", "th", "ph", "h"]
CODAS = ["k", "n", "t", "l", "m", "p", "ng"]
SONORANTS = {"n", "l", "m", "ng"}


def main(out_dir):
    with open(os.path.join(out_dir, "phonemes.tsv"), "w") as f:
        f.write("# Korean phoneme table, Yale romanization. version 1\n")
        f.write("# symbol\tclass\tsonorant\trole\n")
        for v in VOWELS:
            f.write(f"{v}\tvowel\t0\tnucleus\n")
        for c in ONSETS:
            f.write(f"{c}\tconsonant\t{int(c in SONORANTS)}\tonset\n")
        for c in CODAS:
            f.write(f"{c}\tconsonant\t{int(c in SONORANTS)}\tcoda\n")
    with open(os.path.join(out_dir, "inventory.tsv"), "w") as f:
        f.write("# Korean diphone inventory. version 1\n")
        f.write("# symbol\tkind\tleft\tright\n")
        for v in VOWELS:
            f.write(f"{v}\tV\t{v}\t-\n")
        for c in ONSETS:
            for v in VOWELS:
                f.write(f"{c}{v}\tC1V\t{c}\t{v}\n")
        for v in VOWELS:
            for c in CODAS:
                f.write(f"{v}{c}\tVC2\t{v}\t{c}\n")
        for c2 in CODAS:
            if c2 not in SONORANTS:
                continue
            for c1 in ONSETS:
                f.write(f"{c2}{c1}\tC2C1\t{c2}\t{c1}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/korean")
