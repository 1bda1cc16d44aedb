import os

from flask import Flask

from qsfrac.errors import QsfracError
from qsfrac.settings import configure_logging


class ConfigMissing(QsfracError):
    pass


def create_app(directory):
    """
        JSON service over the library. ``directory`` must hold a
        ``config.py``; its settings are layered over the package defaults.
    """
    app = Flask(__name__)
    app.config['DATA_DIR'] = directory
    app.config.from_object('qsfrac.settings')
    try:
        app.config.from_pyfile(
            os.path.join(app.config.get('DATA_DIR'), 'config.py')
        )
    except IOError:
        msg = "You need to place a config.py in %s." % directory
        raise ConfigMissing(msg)
    app.config.from_envvar('QSFRAC_SETTINGS', silent=True)
    configure_logging(app.config['LOG_LEVEL'])

    from qsfrac.web.routes import bp
    app.register_blueprint(bp)

    return app
