# Copyright 2026 The qadio Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plot state probabilities and expectation values from a records.csv file.

    python3 tools/plot_records.py out/records.csv --states 4:1 3:1 1:2 -o probs.png
    python3 tools/plot_records.py out/records.csv --observables -o obs.png
"""

import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def load(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    out = []
    for row in rows:
        probs = {}
        for key, value in row.items():
            if key.startswith("top") and value:
                state, p = value.split("=")
                probs[state] = float(p)
        out.append((float(row["T"]), probs, row))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("records")
    parser.add_argument("--states", nargs="*", default=[])
    parser.add_argument("--observables", action="store_true",
                        help="plot the N_* and HP columns instead")
    parser.add_argument("-o", "--output", default="records.png")
    args = parser.parse_args()

    data = load(args.records)
    T = [t for t, _, _ in data]
    fig, ax = plt.subplots(figsize=(6, 4))
    if args.observables:
        columns = [c for c in data[0][2] if c.startswith("N_")] + ["HP"]
        for column in columns:
            ax.plot(T, [float(row[column]) for _, _, row in data], "o-",
                    label=f"<{column}>")
        ax.set_ylabel("expectation value")
    else:
        states = args.states or sorted({s for _, p, _ in data for s in p})
        for state in states:
            # States outside the recorded top-k are plotted as zero.
            ax.plot(T, [p.get(state, 0.0) for _, p, _ in data], "o-",
                    label=f"|{state.replace(':', ',')}>")
        ax.axhline(0.5, color="grey", lw=0.8, ls="--")
        ax.set_ylabel("probability")
    ax.set_xlabel("T")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
