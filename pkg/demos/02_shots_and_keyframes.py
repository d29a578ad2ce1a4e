"""Shot boundary detection and key-frame selection on synthetic footage.

Builds a 70-frame clip: a red scene, a hard cut to blue, then a gradual
dithered fade to green that should NOT register as a cut.  Shows the
detected shots and which frames were elected to represent them.

Run:  python demos/02_shots_and_keyframes.py
"""

from ivss import ColorQuantizer, detect_shots, extract_keyframes
from ivss.config import ExtractionConfig
from ivss.synth import BLUE, GREEN, RED, dithered_fade, solid_video

frames = (
    solid_video(RED, 20)
    + solid_video(BLUE, 20)          # hard cut at frame 20
    + dithered_fade(BLUE, GREEN, 30) # gradual transition, frames 40..69
)
print(f"built {len(frames)} frames: red x20 | blue x20 | blue->green fade x30")

q = ColorQuantizer(bits=2)
shots = detect_shots(frames, q, shot_threshold=0.35)
print(f"\ndetected {len(shots)} shots at threshold 0.35:")
for i, shot in enumerate(shots):
    print(f"  shot {i}: frames {shot.start}..{shot.end} ({shot.length} frames)")
print("the fade stays inside one shot: no consecutive pair crosses the threshold")

config = ExtractionConfig()
keyframes = extract_keyframes(frames, shots, cluster_delta=25.0, config=config)
print(f"\n{len(keyframes)} key frames elected (cluster delta 25.0 RGB units):")
for kf in keyframes:
    avg = kf.descriptors.avg_rgb
    print(f"  shot {kf.shot_id} -> frame {kf.frame_index}  "
          f"avgRGB ({avg.mean_r:.0f}, {avg.mean_g:.0f}, {avg.mean_b:.0f})")
print("\nstatic shots give one key frame; the fade earns several, one per")
print("average-RGB cluster it drifts through.")
