import hypothesis

# exact rational arithmetic has uneven per-example cost; wall-clock
# deadlines just make the suite flaky
hypothesis.settings.register_profile("exact", deadline=None)
hypothesis.settings.load_profile("exact")
