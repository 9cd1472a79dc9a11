"""Coordinate converter walkthrough: pixel fixations to line/column cells.

An eye tracker reports screen pixels; mapping onto code needs the editor's
character grid: the pane origin plus the monospace cell size.
"""

import tempfile
from pathlib import Path

import eye2vec as e2v

# A 12 px-wide, 24 px-tall character grid whose pane starts at (80, 40).
grid = e2v.FontGrid(origin_x_px=80, origin_y_px=40, char_width_px=12, line_height_px=24)

fixations = [
    e2v.Fixation(0, 180, e2v.PixelPos(86.0, 52.0)),     # cell (1, 1)
    e2v.Fixation(250, 210, e2v.PixelPos(200.5, 112.0)),  # cell (4, 11)
    e2v.Fixation(500, 190, e2v.PixelPos(143.9, 300.0)),  # cell (11, 6)
]
for fixation in fixations:
    converted = e2v.to_grid(fixation, grid)
    print(f"pixel ({fixation.position.x_px:6.1f}, {fixation.position.y_px:6.1f})"
          f" -> line {converted.position.line}, col {converted.position.col}")

# The same conversion over a CSV file, as the CLI's `convert` subcommand does.
with tempfile.TemporaryDirectory() as tmp:
    pixel_csv = Path(tmp) / "recording.csv"
    pixel_csv.write_text(
        "timestamp_ms,x_px,y_px,duration_ms\n"
        "0,86.0,52.0,180\n"
        "250,200.5,112.0,210\n"
        "500,143.9,300.0,190\n",
        encoding="utf-8",
    )
    recording = e2v.read_fixations(pixel_csv, mode="pixel")
    converted = e2v.convert_recording(recording, grid)
    grid_csv = Path(tmp) / "recording_grid.csv"
    e2v.write_fixations(converted, grid_csv)
    print("\ngrid-mode CSV:")
    print(grid_csv.read_text(encoding="utf-8"))

# Fixations above or left of the pane are rejected, not silently clamped.
try:
    e2v.to_grid(e2v.Fixation(0, 100, e2v.PixelPos(10, 10)), grid)
except e2v.OutOfViewport as exc:
    print("out-of-pane fixation rejected:", exc)
