# ============================================================================
# LatticeChoose - Kafka client for run events
# ============================================================================

import json
import logging
from datetime import datetime

from config import KAFKA_BROKER, KAFKA_TOPICS


class KafkaClient:
    """Publishes run events; a no-op when no broker is configured or reachable"""

    def __init__(self, component_name, broker=KAFKA_BROKER):
        self.component_name = component_name
        self.broker = broker
        self.producer = None
        if broker:
            self._connect_producer()

    def _connect_producer(self):
        try:
            from kafka import KafkaProducer
            self.producer = KafkaProducer(
                bootstrap_servers=[self.broker],
                value_serializer=lambda v: json.dumps(v).encode('utf-8'),
                request_timeout_ms=5000
            )
        except Exception as e:
            logging.warning(f"[{self.component_name}] Kafka producer connection failed: {e}")
            self.producer = None

    @property
    def connected(self):
        return self.producer is not None

    def publish_event(self, topic_key, event_type, data):
        """
        topic_key: key in KAFKA_TOPICS
        event_type: e.g. "SOLVED", "SELFTEST_FINISHED"
        data: JSON-serializable dict
        """
        if self.producer is None:
            return False

        topic = KAFKA_TOPICS.get(topic_key, "unknown")
        message = {
            "timestamp": datetime.now().isoformat(),
            "component": self.component_name,
            "event_type": event_type,
            "data": data
        }

        try:
            self.producer.send(topic, message)
            return True
        except Exception as e:
            logging.warning(f"[{self.component_name}] Failed to publish to {topic}: {e}")
            return False

    def close(self):
        if self.producer:
            self.producer.flush()
            self.producer.close()
            self.producer = None
