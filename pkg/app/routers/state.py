from .helpers.scene_helper import Scene

class SharedState:
    scene: Scene | None = None
    scene_name: str | None = None

shared_state = SharedState()
