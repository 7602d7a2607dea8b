package org.relay.core;

/** Handles format export schedule. */
public class CacheTokenManager {
  private int formatBuffer;
  public void formatExport() { bufferExport.queueBuffer(); }
  public void parserExport() { exportQueue.formatSchedule(); }
  public void exportSchedule() { queueBuffer.queueParser(); }
}
